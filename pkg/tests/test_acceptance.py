"""Acceptance suite: golden examples plus property checks, one criterion each.

Exact paths tolerate nothing (structural equality of reduced rational
data); numeric fallback paths use 1e-9.  Each test prints one PASS line;
pytest reports any failure as the matching criterion.
"""

import random
from collections import Counter

import pytest

from mpk import linalg
from mpk.errors import ConvergenceAtInfinityError
from mpk.kreinlanger import (
    Representation,
    assemble_aj,
    blocks_from_system,
    chain_limit,
    check_representability,
    limit_at_infinity_matrix,
    partial_fractions,
    represent,
    sip_matrix,
    verify_representation,
)
from mpk.matpoly import MatPoly
from mpk.odesolve import general_solution, verify_solution
from mpk.polyalg import Poly, exact_root_split, gr
from mpk.smith import DiagForm, diagonalize, verify_diag
from mpk.spectral import canonical_system, eigen_table, pole_cancellation, verify_chain

from conftest import (
    SMALL_FAMILY_ENTRIES,
    random_matpoly,
    random_monic_matpoly,
    random_representable_pair,
)
from oracles import cofactor_det, order_partition, partial_multiplicities

Z = Poly.z()


def _passed(n, text):
    print(f"ACCEPTANCE {n}: PASS - {text}")


def test_criterion_1_shift3_golden(l_shift3, shift3_triple):
    """3x3 golden example: triple, eigen table, chains, psi, solutions."""
    s, d, t = shift3_triple
    triple = DiagForm(s=s, d=d, t=t, det_s=gr(-1), det_t=gr(1))
    assert verify_diag(l_shift3, triple).ok

    sys_ = canonical_system(l_shift3)
    table = {(e.alpha.value, e.column, e.order) for e in sys_.table.entries}
    assert table == {(gr(0), 1, 1), (gr(0), 2, 2), (gr(1), 2, 1)}

    chains = {
        (rec.alpha.value, rec.column): rec.chain for rec in sys_.records
    }
    assert chains[(gr(0), 1)] == ((gr(0), gr(1), gr(0)),)
    assert chains[(gr(0), 2)] == ((gr(0), gr(0), gr(1)), (gr(-1), gr(0), gr(0)))
    assert chains[(gr(1), 2)] == ((gr(-1), gr(0), gr(1)),)

    psi = {
        (rec.alpha.value, rec.column): pole_cancellation(l_shift3, rec).psi
        for rec in sys_.records
    }
    assert psi[(gr(0), 1)] == (Z, Poly.zero(), Poly.zero())
    assert psi[(gr(0), 2)] == (Poly.zero(), Poly.zero(), Z**3 - Z**2)

    sol = general_solution(l_shift3, system=sys_)
    assert sol.dimension == 4
    sigs = {(t.alpha.value, tuple(tuple(v) for v in t.coeffs)) for t in sol.terms}
    assert (gr(0), ((gr(0), gr(1), gr(0)),)) in sigs
    assert (gr(0), ((gr(0), gr(0), gr(1)), (gr(-1), gr(0), gr(0)))) in sigs
    assert (gr(1), ((gr(-1), gr(0), gr(1)),)) in sigs
    for term in sol.terms:
        check = verify_solution(l_shift3, term)
        assert check.ok and all(r.is_zero() for r in check.residual)
    _passed(1, "3x3 golden: triple verified, chains and psi exact, 4 verified solutions")


def test_criterion_2_hermitian_pair_golden(l_hermpair):
    """Hermitian pair golden: diagonal data, limits, A, J, kappa, Gamma."""
    form = diagonalize(l_hermpair)
    diag_data = Counter()
    for p in form.diagonal():
        if p.is_constant():
            diag_data["constant"] += 1
            continue
        split, residual = exact_root_split(p)
        assert residual.is_constant()
        diag_data[tuple(sorted(((v.re, m) for v, m in split)))] += 1
    assert diag_data == Counter({"constant": 1, ((0, 2), (1, 2)): 1})

    sys_ = canonical_system(l_hermpair)
    limits = {rec.alpha.value: chain_limit(l_hermpair, rec) for rec in sys_.records}
    assert limits == {gr(0): gr(-1), gr(1): gr(-1)}

    blocks = blocks_from_system(l_hermpair, sys_)
    a, j, kappa = assemble_aj(blocks)
    assert a == [[gr(x) for x in row] for row in [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]]
    assert j == [[gr(x) for x in row] for row in [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]]
    assert kappa == 2

    rep = represent(l_hermpair)
    assert rep.verified
    known = Representation.from_plain_gamma(
        2,
        rep.s_infinity,
        rep.a_matrix,
        rep.j_matrix,
        rep.blocks,
        [[gr(1), gr(1)], [gr(0), gr(1)], [gr(-1), gr(-1)], [gr(0), gr(1)]],
    )
    assert verify_representation(l_hermpair.inverse_hat(), known).ok
    _passed(2, "Hermitian pair golden: limits -1, known A/J/kappa=2, both Gammas verify")


def test_criterion_3_corner_cubic_negative(l_corner_cubic):
    """Divergent-at-infinity example is refused with the right report."""
    report = l_corner_cubic.degree_report()
    assert report.deg_chi == 2
    assert report.n_times_l == 6
    assert report.deg_chi < report.n_times_l
    assert not report.condition_310
    with pytest.raises(ConvergenceAtInfinityError):
        check_representability(l_corner_cubic)
    _passed(3, "corner cubic refused: minor degree 3 > deg det 2, deg det 2 < 6")


def test_criterion_4_degree_bound_suite():
    """200 random matrices: degree bound, monic equality, det oracle."""
    rng = random.Random(104)
    monic_seen = 0
    for trial in range(200):
        n = rng.randint(1, 3)
        l = rng.randint(1, 3)
        if trial % 2 == 0:
            m = random_monic_matpoly(rng, n, l)
            monic_seen += 1
        else:
            m = random_matpoly(rng, n, l)
        chi = m.det()
        assert chi == cofactor_det(m)
        if chi.is_zero():
            continue
        report = m.degree_report()
        assert report.deg_chi <= n * l
        if report.monic:
            assert report.deg_chi == n * l
    assert monic_seen == 100
    _passed(4, "200 random matrices: deg det <= n*l, equality when monic, Bareiss == cofactor")


def test_criterion_5_signature_suite():
    """Signed sip signatures k = 1..9 plus the k = 5 pencil diagonal."""
    for k in range(1, 10):
        for sign in (1, -1):
            j = linalg.scalar_mul(sign, sip_matrix(k))
            pos, neg, zero = linalg.hermitian_inertia(j)
            assert zero == 0
            if k % 2 == 0:
                assert (pos, neg) == (k // 2, k // 2)
            elif sign > 0:
                assert (pos, neg) == (k // 2 + 1, k // 2)
            else:
                assert (pos, neg) == (k // 2, k // 2 + 1)

    k = 5
    sip = MatPoly([[1 if i + j == k - 1 else 0 for j in range(k)] for i in range(k)])
    pencil = sip - MatPoly.shift_identity(k)
    form = diagonalize(pencil)
    assert verify_diag(pencil, form).ok
    normalized = Counter(d.monic() for d in form.diagonal())
    assert normalized == Counter({Poly.one(): 2, (Z - 1): 1, (Z**2 - 1): 2})
    _passed(5, "signed sip signatures match exact inertia; k=5 pencil diagonal reproduced")


def test_criterion_6_diagonalization_suite():
    """100 random matrices: exact triple identity and strategy invariance."""
    rng = random.Random(106)
    for _ in range(100):
        n = rng.randint(1, 3)
        l = rng.randint(0, 2)
        m = random_matpoly(rng, n, l, complex_part=True)
        form = diagonalize(m)
        assert form.s * m * form.t == form.d
        for name, det in (("S", form.s.det()), ("T", form.t.det())):
            assert det.degree == 0 and not det.is_zero()
        det_l = m.det()
        if not det_l.is_zero():
            prod = Poly.one()
            for p in form.diagonal():
                prod = prod * p
            c = form.s.det().constant_term() * form.t.det().constant_term()
            assert prod == det_l * Poly.constant(c)
            sys_a = canonical_system(m, strategy="min_degree")
            sys_b = canonical_system(m, strategy="min_degree_rev")
            alphas = {e.alpha.value for e in sys_a.table.entries if e.alpha.exact}
            alphas |= {e.alpha.value for e in sys_b.table.entries if e.alpha.exact}
            for alpha in alphas:
                assert order_partition(sys_a.records, alpha) == order_partition(
                    sys_b.records, alpha
                )
    _passed(6, "100 random diagonalizations exact; order partitions strategy-invariant")


def test_criterion_7_chain_suite():
    """Chains verify (with maximality); exhaustive family matches solver."""
    rng = random.Random(107)
    checked = 0
    while checked < 25:
        m = random_matpoly(rng, rng.randint(1, 2), rng.randint(1, 2))
        if m.det().is_zero():
            continue
        sys_ = canonical_system(m, verify=False)
        for rec in sys_.records:
            if not rec.exact:
                continue
            check = verify_chain(m, rec.alpha.value, rec.chain)
            assert check.valid_length == rec.order and check.maximal
        checked += 1

    total = 0
    for a in SMALL_FAMILY_ENTRIES:
        for b in SMALL_FAMILY_ENTRIES:
            for c in SMALL_FAMILY_ENTRIES:
                for d in SMALL_FAMILY_ENTRIES:
                    m = MatPoly([[a, b], [c, d]])
                    if m.det().is_zero():
                        continue
                    total += 1
                    sys_ = canonical_system(m, verify=True)
                    for alpha in {
                        e.alpha.value for e in sys_.table.entries if e.alpha.exact
                    }:
                        assert order_partition(sys_.records, alpha) == partial_multiplicities(
                            m, alpha
                        )
    assert total > 1000
    _passed(7, f"chains valid+maximal; {total} exhaustive matrices match the stacked solver")


def test_criterion_8_representation_roundtrip():
    """50 constructed representable matrices plus the scalar cases."""
    rng = random.Random(108)
    for _ in range(50):
        l, expected_kappa = random_representable_pair(rng)
        rep = represent(l)
        assert rep.verified
        assert rep.kappa == expected_kappa
        dim = rep.dimension
        assert linalg.mat_eq(
            linalg.mat_mul(rep.j_matrix, rep.j_matrix), linalg.identity(dim)
        )
        assert linalg.mat_eq(
            linalg.mat_mul(rep.j_matrix, rep.a_matrix),
            linalg.mat_mul(linalg.transpose(rep.a_matrix), rep.j_matrix),
        )
        # top residues: rank one, sign opposite to the block sign
        lhat = l.inverse_hat()
        strict = lhat.sub_constant(limit_at_infinity_matrix(lhat))
        res = partial_fractions(strict, {b.alpha: b.order for b in rep.blocks})
        for b in rep.blocks:
            top = res[b.alpha][b.order - 1]
            pos, neg, _ = linalg.hermitian_inertia(top)
            assert pos + neg == 1
            assert (neg, pos) == ((1, 0) if b.sign > 0 else (0, 1))

    for scalar in (MatPoly([[Z]]), MatPoly([[Z - 7]])):
        rep = represent(scalar)
        assert rep.dimension == 1
        assert rep.verified
        assert rep.gamma[0].rows == ((gr(1),),)
        assert linalg.is_zero_matrix(rep.s_infinity)
    _passed(8, "50 representable round trips exact; scalar cases give K=1 realizations")
