"""Sequential two-outcome analyzers: confirmation, splitting, and revival.

Three arrangements of Z/X analyzers show why outcomes along different
axes cannot be jointly definite:

  a) Z (block minus) -> Z : the second analyzer confirms the first, 100%.
  b) Z (block minus) -> X : the surviving pure Z+ beam splits 50/50.
  c) Z (block minus) -> X (block minus) -> Z : the final Z analyzer shows
     BOTH beams again, even though Z- was removed upstream.  Measuring X
     erased the earlier Z information.

Run:  python demos/01_spin_cascades.py
"""

import numpy as np

from relspace import preset_cascade, run_cascade

SHOTS = 20000


def show(setup: str, description: str) -> None:
    initial, spec = preset_cascade(setup, SHOTS)
    counts = run_cascade(initial, spec, np.random.default_rng(42))
    print(f"setup ({setup}): {description}")
    print("  stage  axis  blocked   plus   minus")
    for i, (stage, count) in enumerate(zip(spec.stages, counts), start=1):
        blocked = "none"
        if stage.block is not None:
            blocked = "plus" if stage.block.value == "+" else "minus"
        print(f"  {i:>5}  {stage.label:<4}  {blocked:<7} {count.plus:>6}  {count.minus:>6}")
    print()


def main() -> None:
    print(f"Source beam: X+ ({SHOTS} particles per run)\n")
    show("a", "repeating the same question is deterministic")
    show("b", "a definite Z state is an indefinite X state")
    show("c", "the X measurement destroys the earlier Z certainty")

    final = run_cascade(*_setup_c(), np.random.default_rng(42))[-1]
    fraction = final.plus / final.total
    print(f"setup (c) final-stage split: {fraction:.3f} / {1 - fraction:.3f}")
    print("Both outcomes are back, at roughly even odds.")


def _setup_c():
    initial, spec = preset_cascade("c", SHOTS)
    return initial, spec


if __name__ == "__main__":
    main()
