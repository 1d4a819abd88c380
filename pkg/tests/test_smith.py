"""Diagonalization: golden triples, verifier checks, transcripts, invariance."""

import json
import random
from collections import Counter

import pytest

from mpk.matpoly import MatPoly
from mpk.polyalg import Poly, gr
from mpk.smith import ElementaryMove, diagonalize, replay_transcript, verify_diag
from mpk.documents import transcript_from_json, transcript_to_json
from mpk.spectral import canonical_system

from conftest import random_matpoly
from oracles import order_partition, partial_multiplicities

Z = Poly.z()


def root_multiset(diagonal):
    """Multiset of (root, multiplicity-per-entry) over all diagonal entries."""
    from mpk.polyalg import exact_root_split

    out = Counter()
    for d in diagonal:
        if d.is_constant():
            continue
        split, residual = exact_root_split(d)
        assert residual.is_constant()
        for value, mult in split:
            out[(value, mult)] += 1
    return out


class TestGoldenTriples:
    def test_known_triple_passes(self, l_shift3, shift3_triple):
        s, d, t = shift3_triple
        from mpk.smith import DiagForm

        form = DiagForm(s=s, d=d, t=t, det_s=gr(-1), det_t=gr(1))
        assert verify_diag(l_shift3, form).ok

    def test_perturbed_triple_fails_product_check(self, l_shift3, shift3_triple):
        s, d, t = shift3_triple
        from mpk.smith import DiagForm

        bad_t = MatPoly([[1, 0, -(Z**2)], [0, 1, 0], [0, 0, 1]])
        form = DiagForm(s=s, d=d, t=bad_t, det_s=gr(-1), det_t=gr(1))
        check = verify_diag(l_shift3, form)
        assert not check.ok and check.failed == "a"

    def test_own_output_matches_shift3(self, l_shift3, shift3_triple):
        s, d, t = shift3_triple
        form = diagonalize(l_shift3)
        assert form.s == s and form.d == d and form.t == t
        assert verify_diag(l_shift3, form).ok

    def test_shift3_root_data(self, l_shift3):
        form = diagonalize(l_shift3)
        assert root_multiset(form.diagonal()) == Counter({(gr(0), 1): 1, (gr(0), 2): 1, (gr(1), 1): 1})

    def test_hermitian_pair_diag(self, l_hermpair):
        form = diagonalize(l_hermpair)
        assert verify_diag(l_hermpair, form).ok
        assert root_multiset(form.diagonal()) == Counter({(gr(0), 2): 1, (gr(1), 2): 1})
        prod = Poly.one()
        for p in form.diagonal():
            prod = prod * p
        c = form.det_s * form.det_t
        assert prod == l_hermpair.det() * Poly.constant(c)

    def test_sip_pencil_k5(self):
        k = 5
        sip = MatPoly([[1 if i + j == k - 1 else 0 for j in range(k)] for i in range(k)])
        pencil = sip - MatPoly.shift_identity(k)
        form = diagonalize(pencil)
        assert verify_diag(pencil, form).ok
        normalized = Counter()
        for d in form.diagonal():
            normalized[d.monic() if not d.is_zero() else d] += 1
        one = Poly.one()
        assert normalized == Counter(
            {one: 2, (Z - 1).monic(): 1, (Z**2 - 1).monic(): 2}
        )


class TestDegenerate:
    def test_zero_matrix(self):
        zero = MatPoly.zero(2)
        form = diagonalize(zero)
        assert form.d == zero
        assert form.s == MatPoly.identity(2)
        assert form.t == MatPoly.identity(2)
        assert verify_diag(zero, form).ok

    def test_singular_but_nonzero(self):
        m = MatPoly([[Z, Z], [Z, Z]])
        form = diagonalize(m)
        assert verify_diag(m, form).ok
        diag = form.diagonal()
        assert diag[1].is_zero()


class TestRandomRoundTrip:
    def test_hundred_random(self):
        rng = random.Random(20)
        for _ in range(100):
            m = random_matpoly(rng, rng.randint(1, 3), rng.randint(0, 2), complex_part=True)
            form = diagonalize(m)
            check = verify_diag(m, form)
            assert check.ok, check

    def test_replay_reproduces_trackers(self):
        rng = random.Random(21)
        for _ in range(20):
            m = random_matpoly(rng, rng.randint(1, 3), rng.randint(0, 2))
            form = diagonalize(m)
            s, t = replay_transcript(m.n, form.transcript)
            assert s == form.s and t == form.t

    def test_det_from_transcript(self):
        rng = random.Random(22)
        for _ in range(20):
            m = random_matpoly(rng, rng.randint(1, 3), rng.randint(0, 2))
            form = diagonalize(m)
            det_s = gr(1)
            det_t = gr(1)
            for move in form.transcript:
                if move.side == "row":
                    det_s = det_s * move.det_factor()
                else:
                    det_t = det_t * move.det_factor()
            assert det_s == form.det_s == form.s.det().constant_term()
            assert det_t == form.det_t == form.t.det().constant_term()

    def test_transcript_json_roundtrip(self, l_shift3):
        form = diagonalize(l_shift3)
        payload = json.dumps(transcript_to_json(form.transcript))
        back = transcript_from_json(json.loads(payload))
        assert back == form.transcript
        s, t = replay_transcript(l_shift3.n, back)
        assert s == form.s and t == form.t


class TestStrategyInvariance:
    def test_partition_invariant_under_strategy(self):
        rng = random.Random(23)
        checked = 0
        while checked < 40:
            m = random_matpoly(rng, 2, rng.randint(1, 2))
            if m.det().is_zero():
                continue
            sys_a = canonical_system(m, strategy="min_degree")
            sys_b = canonical_system(m, strategy="min_degree_rev")
            alphas = {
                e.alpha.value for e in sys_a.table.entries if e.alpha.exact
            } | {e.alpha.value for e in sys_b.table.entries if e.alpha.exact}
            for a in alphas:
                pa = order_partition(sys_a.records, a)
                pb = order_partition(sys_b.records, a)
                assert pa == pb == partial_multiplicities(m, a)
            checked += 1

    def test_total_multiplicity_is_det_degree(self):
        rng = random.Random(24)
        checked = 0
        while checked < 30:
            m = random_matpoly(rng, rng.randint(1, 3), rng.randint(0, 2))
            if m.det().is_zero():
                continue
            form = diagonalize(m)
            assert sum(d.degree for d in form.diagonal()) == m.det().degree
            checked += 1

    def test_unknown_strategy_rejected(self, l_shift3):
        with pytest.raises(ValueError):
            diagonalize(l_shift3, strategy="nope")
