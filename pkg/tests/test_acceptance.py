"""Acceptance suite: one test per shipping criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
PASS/FAIL lines.
"""

import cmath
import math
import time

import numpy as np

from relspace import (
    Dimension,
    Outcome,
    RelevanceParams,
    SimConfig,
    aggregate,
    basis_kets,
    chi_square_two_proportions,
    commutator_report,
    effect_tables,
    fit_model,
    fit_theta,
    initial_state,
    inner,
    interference_term,
    ltp_report,
    negativity,
    observable,
    predict_sequence_prob,
    preset_cascade,
    probabilities_from_conditionals,
    projector,
    ru_overlap_prob,
    run_cascade,
    simulate_dataset,
    wigner,
)

from conftest import (
    PUBLISHED,
    QUERY_IDS,
    R_HAT_Q1_DIAG,
    R_HAT_Q1_OFF_MOD,
    R_HAT_Q1_OFF_PHASE_DEG,
    U_HAT_Q1,
    WIGNER_PUBLISHED,
    published_model,
    published_params,
    replica_aggregate,
)

T, U, R = Dimension.TOPICALITY, Dimension.UNDERSTANDABILITY, Dimension.RELIABILITY
POS = Outcome.POSITIVE


def _criterion(number: int, label: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"[criterion {number}] {status}: {label}")
    assert not failures, f"criterion {number} ({label}): " + "; ".join(
        str(item) for item in failures[:10]
    )


def _check(failures: list, condition: bool, message: str) -> None:
    if not condition:
        failures.append(message)


def test_criterion_1_parameter_recovery():
    """Published conditionals reproduce t^2, u^2, r^2 (1e-3) and theta_r (0.1 deg)."""
    failures: list = []
    for query_id in QUERY_IDS:
        row = PUBLISHED[query_id]
        params = fit_model(replica_aggregate(query_id)).model.params
        _check(failures, abs(params.t ** 2 - row["p_t"]) <= 1e-3, f"{query_id} t^2")
        _check(failures, abs(params.u ** 2 - row["u2"]) <= 1e-3, f"{query_id} u^2")
        _check(failures, abs(params.r ** 2 - row["r2"]) <= 1e-3, f"{query_id} r^2")
        _check(
            failures,
            abs(params.theta_r_deg - row["theta_deg"]) <= 0.1,
            f"{query_id} theta_r = {params.theta_r_deg:.4f} vs {row['theta_deg']}",
        )
    _criterion(1, "parameter recovery from published conditionals", failures)


def test_criterion_2_wigner_tables():
    """All twelve published quasi-probability entries within 1e-3, negativity flagged."""
    failures: list = []
    for query_id in QUERY_IDS:
        dist = wigner(PUBLISHED[query_id]["p_t"])
        expected = np.array(WIGNER_PUBLISHED[query_id])
        worst = np.abs(dist.w - expected).max()
        _check(failures, worst <= 1e-3, f"{query_id} max entry error {worst:.2e}")
        has_negative, min_entry = negativity(dist)
        _check(failures, has_negative, f"{query_id} negativity flag")
        _check(
            failures,
            abs(min_entry - expected.min()) <= 1e-3,
            f"{query_id} min entry {min_entry:.4f}",
        )
    _criterion(2, "quasi-probability tables and negativity", failures)


def test_criterion_3_operators_and_incompatibility():
    """Published operators reproduced; every commutator norm clears 0.1."""
    failures: list = []
    params = published_params("q1")
    t_hat = observable(params, T).m
    _check(failures, np.allclose(t_hat, np.diag([1.0, -1.0]), atol=1e-12), "T operator")

    u_hat = observable(params, U).m
    _check(
        failures,
        np.abs(u_hat.real - np.array(U_HAT_Q1)).max() <= 1e-3,
        "U operator entries",
    )

    r_hat = observable(params, R).m
    _check(failures, abs(r_hat[0, 0].real - R_HAT_Q1_DIAG) <= 1e-3, "R diagonal")
    _check(failures, abs(r_hat[1, 1].real + R_HAT_Q1_DIAG) <= 1e-3, "R diagonal sign")
    _check(
        failures, abs(abs(r_hat[0, 1]) - R_HAT_Q1_OFF_MOD) <= 1e-3, "R off-diagonal modulus"
    )
    phase = abs(math.degrees(cmath.phase(r_hat[1, 0])))
    _check(
        failures,
        abs(phase - R_HAT_Q1_OFF_PHASE_DEG) <= 0.1,
        f"R off-diagonal phase {phase:.3f}",
    )

    for query_id in QUERY_IDS:
        for entry in commutator_report(published_model(query_id)):
            _check(
                failures,
                entry.frobenius_norm > 0.1,
                f"{query_id} commutator {entry.pair}",
            )
            _check(failures, not entry.commutes, f"{query_id} commutes flag {entry.pair}")
    _criterion(3, "question observables and incompatibility", failures)


def test_criterion_4_total_probability_pairs():
    """Path sums vs direct probabilities match the published pairs within 1e-3."""
    expected = {
        "q1": (0.3775, 0.4609),
        "q2": (0.5207, 0.4857),
        "q3": (0.6442, 0.5616),
    }
    failures: list = []
    for query_id in QUERY_IDS:
        agg = replica_aggregate(query_id)
        report = ltp_report(agg, fit_model(agg).model)
        ltp_sum, direct = expected[query_id]
        _check(
            failures,
            abs(report.p_ltp_sum - ltp_sum) <= 1e-3,
            f"{query_id} sum {report.p_ltp_sum:.4f} vs {ltp_sum}",
        )
        _check(
            failures,
            abs(report.p_direct - direct) <= 1e-3,
            f"{query_id} direct {report.p_direct:.4f} vs {direct}",
        )
    _criterion(4, "total-probability (interference) pairs", failures)


def test_criterion_5_effect_tables():
    """All published conditional-effect cells within 1e-3; the q3 zero cell exact."""
    failures: list = []
    for query_id in QUERY_IDS:
        row = PUBLISHED[query_id]
        tables = effect_tables(replica_aggregate(query_id))
        r_table = tables.reliability_given_understandability
        u_table = tables.understandability_given_reliability
        cells = [
            ("P(R+|T+)", r_table.baseline.estimate.value, row["r_given_t"]),
            ("P(R+|U+,T+)", r_table.conditioned[0].estimate.value, row["r_given_u_pos"]),
            ("P(R+|U-,T+)", r_table.conditioned[1].estimate.value, row["r_given_u_neg"]),
            ("P(U+|T+)", u_table.baseline.estimate.value, row["u_given_t"]),
            ("P(U+|R+,T+)", u_table.conditioned[0].estimate.value, row["u_given_r_pos"]),
            ("P(U+|R-,T+)", u_table.conditioned[1].estimate.value, row["u_given_r_neg"]),
        ]
        for label, got, want in cells:
            _check(
                failures,
                abs(got - want) <= 1e-3,
                f"{query_id} {label} {got:.4f} vs {want}",
            )
    zero_cell = (
        effect_tables(replica_aggregate("q3"))
        .reliability_given_understandability.conditioned[1]
        .estimate.value
    )
    _check(failures, zero_cell == 0.0, "q3 P(R+|U-,T+) exact zero")
    _criterion(5, "conditional-effect tables", failures)


def test_criterion_6_chi_square_oracle():
    """(55/100 vs 37/100): textbook Pearson statistic, p about 0.0107.

    The oracle is the exact 2x2 Pearson value,
    N (ad - bc)^2 / (row1 row2 col1 col2) = 6.521739...
    """
    failures: list = []
    oracle = 200 * (55 * 63 - 45 * 37) ** 2 / (100 * 100 * 92 * 108)
    result = chi_square_two_proportions(55, 100, 37, 100)
    _check(
        failures,
        abs(result.statistic - oracle) <= 0.01,
        f"statistic {result.statistic:.4f} vs oracle {oracle:.4f}",
    )
    _check(failures, abs(result.p_value - 0.0107) <= 5e-4, f"p {result.p_value:.5f}")
    _check(failures, result.significant, "significance at alpha 0.05")
    trivial = chi_square_two_proportions(1, 2, 1, 2)
    _check(failures, trivial.statistic == 0.0 and trivial.p_value == 1.0, "equal proportions")
    _criterion(6, "two-proportion chi-square oracle case", failures)


def test_criterion_7_property_sweeps():
    """Algebraic invariants over 10^4 randomized parameter draws.

    Per draw: state normalization; basis orthogonality for all three
    dimensions; projector idempotence/Hermiticity and observable
    involution for the phase-carrying dimension; the closed overlap form
    vs the explicit amplitude computation (1e-9); fit-predict closure
    (1e-9); and the noiseless total-probability gap vs the interference
    term (1e-9).
    """
    failures: list = []
    rng = np.random.default_rng(20250808)
    n_cases = 10000
    eye = np.eye(2)

    for index in range(n_cases):
        t, u, r = rng.uniform(0.01, 0.99, size=3)
        theta = rng.uniform(0.0, math.pi)
        params = RelevanceParams(t=t, u=u, r=r, theta_r=theta)

        state = initial_state(params)
        norm = abs(state.a0) ** 2 + abs(state.a1) ** 2
        if abs(norm - 1.0) > 1e-9:
            failures.append(f"case {index}: state norm {norm!r}")
            break

        bases = {dim: basis_kets(params, dim) for dim in Dimension}
        for dim, basis in bases.items():
            if abs(inner(basis.plus, basis.minus)) > 1e-9:
                failures.append(f"case {index}: {dim} basis not orthogonal")
                break

        proj = projector(bases[R].plus)
        if not np.allclose(proj @ proj, proj, atol=1e-9):
            failures.append(f"case {index}: projector not idempotent")
            break
        if not np.allclose(proj, proj.conj().T, atol=1e-9):
            failures.append(f"case {index}: projector not Hermitian")
            break
        obs = observable(params, R).m
        if not np.allclose(obs @ obs, eye, atol=1e-9):
            failures.append(f"case {index}: observable not an involution")
            break

        closed = ru_overlap_prob(u, r, theta)
        amp = r * u + math.sqrt(1 - r * r) * cmath.exp(-1j * theta) * math.sqrt(1 - u * u)
        if abs(closed - abs(amp) ** 2) > 1e-9:
            failures.append(f"case {index}: closed overlap form mismatch")
            break

        theta_fit = fit_theta(u, r, closed)
        if abs(theta_fit.theta_r - theta) > 1e-7:
            failures.append(f"case {index}: phase not recovered")
            break

        agg = probabilities_from_conditionals(
            "sweep",
            t * t,
            u * u,
            r * r,
            closed,
            p_r_pos_given_u_neg_t_pos=1.0 - closed,
        )
        fit = fit_model(agg)
        model = fit.model
        if abs(fit.cos_theta_raw) > 1.0 + 1e-12:
            failures.append(f"case {index}: clamping activated on model-generated input")
            break
        checks = (
            (predict_sequence_prob(model, [(T, POS)]), t * t),
            (predict_sequence_prob(model, [(T, POS), (U, POS)]), t * t * u * u),
            (
                predict_sequence_prob(model, [(T, POS), (U, POS), (R, POS)]),
                t * t * u * u * closed,
            ),
        )
        if any(abs(got - want) > 1e-9 for got, want in checks):
            failures.append(f"case {index}: fit-predict closure broken")
            break

        gap = ltp_report(agg, model)
        if abs(gap.delta - interference_term(params)) > 1e-9:
            failures.append(f"case {index}: LTP gap != interference term")
            break

    _criterion(7, f"algebraic property sweeps ({n_cases} cases)", failures)


def _binomial_se(p: float, n: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 1e-12) / n)


def _theta_se(agg) -> float:
    """Delta-method standard error of the fitted phase.

    Propagates the binomial variances of the three conditionals through
    numerically differentiated fit_theta.
    """

    def theta_of(pu: float, pr: float, q: float) -> float:
        return fit_theta(math.sqrt(pu), math.sqrt(pr), q).theta_r

    pu = agg.p_u_pos_given_t_pos
    pr = agg.p_r_pos_given_t_pos
    q = agg.p_r_pos_given_u_pos_t_pos
    point = (pu.value, pr.value, q.value)
    counts = (pu.trials, pr.trials, q.trials)
    step = 1e-6
    variance = 0.0
    for axis in range(3):
        bumped_up = list(point)
        bumped_down = list(point)
        bumped_up[axis] += step
        bumped_down[axis] -= step
        gradient = (theta_of(*bumped_up) - theta_of(*bumped_down)) / (2 * step)
        variance += gradient ** 2 * _binomial_se(point[axis], counts[axis]) ** 2
    return math.sqrt(variance)


def test_criterion_8_monte_carlo():
    """400k-respondent round trip within 2 SE; cascade signatures within 3 sigma."""
    failures: list = []
    started = time.monotonic()

    generator = published_model("q2")
    true = generator.params
    config = SimConfig(model=generator, n_respondents=400000, seed=20240817)
    agg = aggregate(simulate_dataset(config), "q2")
    fitted = fit_model(agg).model.params

    se_t = _binomial_se(agg.p_t_pos_tur.value, agg.p_t_pos_tur.trials) / (2 * true.t)
    se_u = _binomial_se(
        agg.p_u_pos_given_t_pos.value, agg.p_u_pos_given_t_pos.trials
    ) / (2 * true.u)
    se_r = _binomial_se(
        agg.p_r_pos_given_t_pos.value, agg.p_r_pos_given_t_pos.trials
    ) / (2 * true.r)
    se_theta = _theta_se(agg)
    for label, got, want, se in (
        ("t", fitted.t, true.t, se_t),
        ("u", fitted.u, true.u, se_u),
        ("r", fitted.r, true.r, se_r),
        ("theta_r", fitted.theta_r, true.theta_r, se_theta),
    ):
        _check(
            failures,
            abs(got - want) <= 2 * se,
            f"{label}: |{got:.6f} - {want:.6f}| > 2*{se:.2e}",
        )

    shots = 20000
    initial, spec = preset_cascade("a", shots)
    counts = run_cascade(initial, spec, np.random.default_rng(1))
    _check(failures, counts[1].minus == 0, "setup a: second analyzer shows minus")

    initial, spec = preset_cascade("b", shots)
    counts = run_cascade(initial, spec, np.random.default_rng(2))
    survivors = counts[1].total
    _check(
        failures,
        abs(counts[1].plus / survivors - 0.5) <= 3 * _binomial_se(0.5, survivors),
        "setup b: no 50/50 split",
    )

    initial, spec = preset_cascade("c", shots)
    counts = run_cascade(initial, spec, np.random.default_rng(3))
    final = counts[2]
    _check(failures, final.plus > 0 and final.minus > 0, "setup c: blocked beam missing")
    _check(
        failures,
        abs(final.plus / final.total - 0.5) <= 3 * _binomial_se(0.5, final.total),
        "setup c: no 50/50 split",
    )

    elapsed = time.monotonic() - started
    _check(failures, elapsed < 30.0, f"runtime {elapsed:.1f}s exceeds 30s")
    _criterion(8, f"Monte Carlo round trip and cascades ({elapsed:.1f}s)", failures)
