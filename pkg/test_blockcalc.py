"""
Test the block calculator: BGG matrices, projective multiplicities and reports
"""

import dataclasses

import numpy as np
import pytest

from blockcalc import (
    BGGMatrix, bgg_matrix, block_report, cover_dimensions, direct_sum_reports, ext_report,
    generic_fast_path, minus_rho_closed_form, solve_projective_multiplicities, totals, verify,
    verma_flag_multiplicities,
)
from errors import InternalInconsistencyError, PreconditionError
from findim import character
from rootsys import Weight, build_root_system


W = Weight.of

# Parameters exercised for every small type: integral regular, -rho, a singular
# integral lambda, generic lambda and a non-integral lambda with W_lambda != 1
LAMBDAS = {
    ('A', 1): [W(0), W(-1), W(2), W('1/2')],
    ('A', 2): [W(0, 0), W(-1, -1), W(-1, 0), W('1/5', '1/7'), W('1/2', 0)],
    ('B', 2): [W(0, 0), W(-1, -1), W(-1, 0), W('1/3', '1/5'), W('1/2', 0)],
    ('G', 2): [W(0, 0), W(-1, -1), W(0, -1), W('1/5', '1/7'), W('1/2', 0)],
}

MODULES = {
    ('A', 1): [W(0), W(2), W(1)],
    ('A', 2): [W(0, 0), W(1, 1), W(1, 0)],
    ('B', 2): [W(0, 0), W(0, 2), W(1, 0)],
    ('G', 2): [W(0, 0), W(0, 1), W(1, 0)],
}


def _dims(report):
    return {e.mu: (e.dim_S, e.dim_N, e.dim_Q) for e in report.entries}


def test_flag_multiplicities_are_weight_multiplicities():
    rs = build_root_system('A', 2)
    flag = verma_flag_multiplicities(rs, W(0, 0), character(rs, W(1, 1)))
    assert flag[W(0, 0)] == 2
    assert flag[W(-1, -1)] == 1
    assert sum(flag.values()) == 8


def test_bgg_matrix_a1():
    rs = build_root_system('A', 1)
    bgg = bgg_matrix(rs, W(0), [W(0), W(-2)])
    assert bgg.weights == [W(-2), W(0)]
    assert bgg.entries.tolist() == [[1, 1], [0, 1]]


def test_bgg_matrix_is_identity_in_general_position():
    rs = build_root_system('B', 2)
    lam = W('1/3', '1/5')
    support = list(verma_flag_multiplicities(rs, lam, character(rs, W(0, 2))))
    bgg = bgg_matrix(rs, lam, support)
    assert np.array_equal(bgg.entries, np.identity(len(support), dtype=np.int64))


def test_bgg_matrix_regular_a2_block():
    rs = build_root_system('A', 2)
    lam = W(0, 0)
    orbit = [W(0, 0), W(-2, 1), W(1, -2), W(-3, 0), W(0, -3), W(-2, -2)]
    bgg = bgg_matrix(rs, lam, orbit)
    assert bgg.weights[0] == W(-2, -2)
    assert bgg.weights[-1] == W(0, 0)
    # P(-2,-2) has a Verma flag with every M(w.0)
    assert bgg.entries[0].tolist() == [1] * 6
    assert int(bgg.entries.sum()) == 19


def test_bgg_matrix_at_minus_rho_a1():
    rs = build_root_system('A', 1)
    bgg = bgg_matrix(rs, W(-1), [W(-1)])
    assert bgg.entries.tolist() == [[1]]


def test_verma_flag_count_is_conserved():
    for key in [('A', 2), ('B', 2), ('G', 2)]:
        rs = build_root_system(*key)
        lam = LAMBDAS[key][2]
        for nu in MODULES[key]:
            v_char = character(rs, nu)
            flag = verma_flag_multiplicities(rs, lam, v_char)
            bgg = bgg_matrix(rs, lam, list(flag))
            d = solve_projective_multiplicities(flag, bgg)
            row_sums = bgg.entries.sum(axis=1)
            assert sum(d[mu] * int(row_sums[k]) for k, mu in enumerate(bgg.weights)) == v_char.dimension()


def test_solve_identity_and_triangular():
    bgg = BGGMatrix(weights=[W(-2), W(0)], entries=np.array([[1, 1], [0, 1]], dtype=np.int64))
    assert solve_projective_multiplicities({W(-2): 1, W(0): 1}, bgg) == {W(-2): 1, W(0): 0}
    assert solve_projective_multiplicities({W(-2): 0, W(0): 0}, bgg) == {W(-2): 0, W(0): 0}
    assert solve_projective_multiplicities({W(-2): 2, W(0): 5}, bgg) == {W(-2): 2, W(0): 3}


def test_solve_rejects_negative_solutions():
    bgg = BGGMatrix(weights=[W(-2), W(0)], entries=np.array([[1, 1], [0, 1]], dtype=np.int64))
    with pytest.raises(InternalInconsistencyError):
        solve_projective_multiplicities({W(-2): 2, W(0): 1}, bgg)


def test_cover_dimensions_stay_exact_past_int64():
    big = 2 ** 70
    bgg = BGGMatrix(weights=[W(-2), W(0)], entries=np.array([[1, 1], [0, 1]], dtype=np.int64))
    assert cover_dimensions({W(-2): big, W(0): big}, bgg) == {W(-2): 2 * big, W(0): big}
    assert solve_projective_multiplicities({W(-2): big, W(0): 3 * big}, bgg) == {W(-2): big, W(0): 2 * big}


def test_bgg_entries_are_python_ints():
    rs = build_root_system('A', 1)
    bgg = bgg_matrix(rs, W(0), [W(0), W(-2)])
    assert bgg.entries.dtype == object
    assert all(type(c) is int for row in bgg.entries.tolist() for c in row)


def test_solve_rejects_weights_outside_the_support():
    bgg = BGGMatrix(weights=[W(0)], entries=np.array([[1]], dtype=np.int64))
    with pytest.raises(PreconditionError):
        solve_projective_multiplicities({W(4): 1}, bgg)


def test_a1_regular_adjoint_report():
    rs = build_root_system('A', 1)
    report = block_report(rs, W(0), W(2))
    assert [e.mu for e in report.entries] == [W(-2), W(0), W(2)]
    assert _dims(report) == {W(-2): (1, 1, 2), W(0): (0, 1, 1), W(2): (1, 1, 1)}
    assert report.end_v_zero == report.sum_check == 3
    assert report.simple_modules == [W(-2), W(2)]
    assert all(e.minimal for e in report.entries)
    # L(0) is minimal with V_0 != 0, yet S(0) vanishes
    assert report.converse_candidates == [W(0)]
    verify(report)


def test_a1_minus_rho_adjoint_report():
    rs = build_root_system('A', 1)
    report = block_report(rs, W(-1), W(2))
    assert [e.mu for e in report.entries] == [W(-3), W(-1), W(1)]
    assert _dims(report) == {W(-3): (1, 1, 2), W(-1): (1, 1, 1), W(1): (0, 1, 1)}
    assert report.entry(W(1)).minimal is False
    assert report.converse_candidates == []
    assert report.sum_check == 3


def test_a2_minus_rho_adjoint_report():
    rs = build_root_system('A', 2)
    report = block_report(rs, -rs.rho, W(1, 1))
    simple = {e.mu: (e.dim_S, e.dim_Q) for e in report.entries if e.dim_S}
    assert simple == {W(-2, -2): (1, 6), W(-1, -1): (2, 2)}
    assert report.sum_check == report.end_v_zero == 10


def test_minus_rho_closed_forms():
    rs = build_root_system('A', 1)
    assert minus_rho_closed_form(rs, character(rs, W(2))) == {W(-3): (1, 2), W(-1): (1, 1)}
    rs2 = build_root_system('A', 2)
    assert minus_rho_closed_form(rs2, character(rs2, W(1, 1))) == {W(-2, -2): (1, 6), W(-1, -1): (2, 2)}
    rs3 = build_root_system('G', 2)
    closed = minus_rho_closed_form(rs3, character(rs3, W(0, 1)))
    assert sum(s * q for s, q in closed.values()) == 16


def test_acceptance_matrix():
    for key, lambdas in LAMBDAS.items():
        rs = build_root_system(*key)
        for lam in lambdas:
            for nu in MODULES[key]:
                report = block_report(rs, lam, nu)
                verify(report)
                assert report.sum_check == report.end_v_zero
                for e in report.entries:
                    assert 0 <= e.dim_S <= e.dim_N <= e.dim_Q
                    assert e.dim_N == e.v_weight_mult > 0
                    if e.dim_S:
                        assert e.minimal
                assert report.entry(lam - nu).dim_S == 1


def test_trivial_module_gives_one_simple():
    rs = build_root_system('B', 2)
    report = block_report(rs, W(-1, 0), W(0, 0))
    assert _dims(report) == {W(-1, 0): (1, 1, 1)}
    assert report.end_v_zero == 1


def test_general_position_fast_path_matches_full_computation():
    for key, lambdas in LAMBDAS.items():
        rs = build_root_system(*key)
        lam = lambdas[3]
        for nu in MODULES[key]:
            fast = generic_fast_path(rs, lam, character(rs, nu), nu)
            assert fast == block_report(rs, lam, nu)


def test_fast_path_examples():
    rs = build_root_system('A', 1)
    report = generic_fast_path(rs, W('1/2'), character(rs, W(2)))
    assert [e.dim_S for e in report.entries] == [1, 1, 1]
    assert report.sum_check == report.end_v_zero == 3
    assert report.v_highest_weight == W(2)

    rs2 = build_root_system('A', 2)
    lam = W('1/3', '1/3')
    trivial = generic_fast_path(rs2, lam, character(rs2, W(0, 0)))
    assert _dims(trivial) == {lam: (1, 1, 1)}
    adjoint = generic_fast_path(rs2, lam, character(rs2, W(1, 1)))
    assert adjoint.entry(lam).dim_S == 2


def test_fast_path_requires_general_position():
    rs = build_root_system('A', 2)
    with pytest.raises(PreconditionError):
        generic_fast_path(rs, W('1/2', 0), character(rs, W(1, 0)))


def test_dominant_order_disagrees_at_minus_rho():
    rs = build_root_system('A', 2)
    report = block_report(rs, -rs.rho, W(1, 1), order_variant='dominant')
    entry = report.entry(W(-2, -2))
    assert entry.dim_S == 1
    assert entry.minimal is False
    assert entry.minimal_other_order is True
    assert W(-2, -2) in report.order_disagreement_flags
    assert report.checks['order_agreement'] is False
    assert report.checks['necessary_condition'] is False
    verify(report)


def test_unknown_order_variant():
    rs = build_root_system('A', 1)
    with pytest.raises(PreconditionError):
        block_report(rs, W(0), W(2), order_variant='lexicographic')


def test_non_dominant_lambda_is_rejected():
    rs = build_root_system('A', 2)
    with pytest.raises(PreconditionError):
        block_report(rs, W('1/2', -2), W(1, 0))


def test_ext_report_a1():
    rs = build_root_system('A', 1)
    records = ext_report(rs, W(0), W(2))
    assert [(r.mu, r.nu, r.dims) for r in records] == [
        (W(-2), W(-2), (1,)),
        (W(0), W(-2), (0,)),
        (W(2), W(2), (1,)),
    ]


def test_ext_report_skips_singular_classes():
    rs = build_root_system('A', 1)
    records = ext_report(rs, W(-1), W(2))
    assert all(r.mu != W(-1) and r.nu != W(-1) for r in records)
    assert [(r.mu, r.nu) for r in records] == [(W(-3), W(-3)), (W(1), W(-3))]


def test_ext_report_diagonal():
    rs = build_root_system('A', 2)
    report = block_report(rs, W(0, 0), W(1, 1))
    for record in ext_report(rs, W(0, 0), W(1, 1), report):
        assert record.dims[0] == (1 if record.mu == record.nu else 0)


def test_direct_sum_totals():
    rs = build_root_system('A', 1)
    reports = direct_sum_reports(rs, W(0), [W(2), W(0)])
    assert len(reports) == 2
    assert totals(reports) == (4, 4)


def test_direct_sum_uses_fast_path_only_in_general_position():
    rs = build_root_system('A', 1)
    fast = direct_sum_reports(rs, W(0), [W(2)], fast_path=True)
    assert _dims(fast[0])[W(0)] == (0, 1, 1)
    generic = direct_sum_reports(rs, W('1/2'), [W(2)], fast_path=True)
    assert all(s == n == q for s, n, q in _dims(generic[0]).values())


def test_verify_catches_tampered_reports():
    rs = build_root_system('A', 1)
    report = block_report(rs, W(0), W(2))
    with pytest.raises(InternalInconsistencyError):
        verify(dataclasses.replace(report, sum_check=report.sum_check + 1))

    bad_entry = dataclasses.replace(report.entries[0], minimal=False)
    tampered = dataclasses.replace(report, entries=[bad_entry] + report.entries[1:])
    with pytest.raises(InternalInconsistencyError):
        verify(tampered)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith('test_') and callable(fn):
            fn()
            print(f"✓ {name}")
