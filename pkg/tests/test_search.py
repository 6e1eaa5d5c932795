from fractions import Fraction

import pytest

from palfree.morphisms import load_morphism
from palfree.repetition import ExponentBound
from palfree.search import (IMAGE_FORBIDDEN, REFUTATION_ORDER,
                            TERNARY_FORBIDDEN, ExhaustionCertificate,
                            Inconclusive, Reached, SearchConstraints,
                            count_words, estimate_growth, factor_equivalence,
                            prove_preimage_forbidden, replay_proof,
                            run_preimage_family, search)

F = Fraction


def cubefree():
    return ExponentBound(F(3), strict=False)


def test_budget8_exhausts():
    c = SearchConstraints(2, None, 8)
    res = search(c, 400, symmetry=True)
    assert isinstance(res, ExhaustionCertificate)
    assert res.max_depth_reached == 8
    assert res.longest_words  # recorded witnesses of the deepest level
    assert all(len(w) == 8 for w in res.longest_words)


def test_cubefree_budget14_exhausts():
    c = SearchConstraints(2, cubefree(), 14)
    res = search(c, 400, symmetry=True)
    assert isinstance(res, ExhaustionCertificate)
    assert res.max_depth_reached == 52


def test_search_reaches_witness():
    c = SearchConstraints(2, ExponentBound.parse("5/2+"), 20)
    res = search(c, 120, symmetry=False)
    assert isinstance(res, Reached)
    assert len(res.witness) == 120
    # the witness is the lexicographically least valid word of that length:
    # no sibling branch left of it can be valid
    assert res.witness[0] == "0"


def test_search_determinism():
    c = SearchConstraints(2, cubefree(), 12)
    a = search(c, 300, symmetry=True)
    b = search(c, 300, symmetry=True)
    assert (a.max_depth_reached, a.nodes_visited, a.longest_words) == \
           (b.max_depth_reached, b.nodes_visited, b.longest_words)


def test_search_resume_equivalence():
    c = SearchConstraints(2, cubefree(), 13)
    full = search(c, 300, symmetry=True)
    part = search(c, 300, node_budget=500, symmetry=True)
    assert isinstance(part, Inconclusive)
    assert part.frontier
    rest = search(c, 300, frontier=part.frontier)
    assert isinstance(rest, ExhaustionCertificate)
    assert max(part.max_depth_reached, rest.max_depth_reached) == full.max_depth_reached


def test_count_words_unconstrained():
    counts = count_words(SearchConstraints(2), 10, symmetry=True)
    assert counts == [2 ** n if n else 1 for n in range(11)]


def test_count_words_monotone_under_tightening():
    loose = count_words(SearchConstraints(2, None, 10), 25)
    tight = count_words(SearchConstraints(2, None, 9), 25)
    tighter = count_words(SearchConstraints(2, cubefree(), 9), 25)
    assert all(a >= b for a, b in zip(loose, tight))
    assert all(a >= b for a, b in zip(tight, tighter))


def test_count_words_against_search_depths():
    c = SearchConstraints(2, cubefree(), 14)
    counts = count_words(c, 60)
    assert counts[52] > 0
    assert all(x == 0 for x in counts[53:])
    # count at the deepest level matches the exhaustion certificate
    res = search(c, 400, symmetry=True)
    assert res.longest_count * 2 == counts[52]


def test_forbidden_factor_constraint():
    c = SearchConstraints(2, None, None, ("00", "11"))
    res = search(c, 64, symmetry=False)
    assert isinstance(res, Reached)
    assert res.witness == "01" * 32
    counts = count_words(c, 12, symmetry=True)
    assert counts[12] == 2  # (01)^6 and (10)^6


def test_estimate_growth_exact_geometric():
    counts = [1] + [2 * 3 ** n for n in range(20)]
    assert abs(estimate_growth(counts) - 3) < 1e-9
    with pytest.raises(ValueError):
        estimate_growth([1])


def test_growth_budget11():
    counts = count_words(SearchConstraints(2, None, 11), 60)
    est = estimate_growth(counts)
    assert abs(est - 1.1127756842787) <= 0.01


def test_budget8_finite_language():
    counts = count_words(SearchConstraints(2, None, 8), 30)
    assert counts[9:] == [0] * 22


def test_preimage_families_complete():
    for name in ("mu", "nu"):
        logs, failed = run_preimage_family(name)
        assert failed is None
        assert [log.target for log in logs] == list(REFUTATION_ORDER[name])
        m = load_morphism(name)
        for log in logs:
            assert replay_proof(log, m, IMAGE_FORBIDDEN[name])


def test_preimage_examples_from_proofs():
    mu = load_morphism("mu")
    # the first case needs no prior knowledge: all right extensions die
    log = prove_preimage_forbidden(mu, "22", IMAGE_FORBIDDEN["mu"], ())
    assert log is not None and log.depth == 1
    txt = log.text()
    assert "220" in txt and "221" in txt and "222" in txt
    nu = load_morphism("nu")
    log2 = prove_preimage_forbidden(nu, "22", IMAGE_FORBIDDEN["nu"], ())
    assert log2 is not None
    assert "0101" in log2.text()  # nu(22) = 0101 is forbidden directly


def test_preimage_order_matters():
    nu = load_morphism("nu")
    # the deep chain cannot be closed without the earlier members
    log = prove_preimage_forbidden(nu, "21021012102", IMAGE_FORBIDDEN["nu"], (),
                                   max_depth=8, node_budget=60000)
    assert log is None


def test_preimage_replay_detects_tampering():
    nu = load_morphism("nu")
    # the very first refutation rests on an image-forbidden hit
    log = prove_preimage_forbidden(nu, "00", IMAGE_FORBIDDEN["nu"], ())
    assert log is not None
    assert replay_proof(log, nu, IMAGE_FORBIDDEN["nu"])
    assert not replay_proof(log, nu, ("1111111",))  # wrong forbidden set


def test_preimage_requires_injective():
    from palfree.morphisms import Morphism
    with pytest.raises(ValueError):
        prove_preimage_forbidden(Morphism(("01", "01")), "00", ("0",), ())


def test_factor_equivalence_trivial():
    res = factor_equivalence(SearchConstraints(2, None, None, ("00", "11")),
                             "01" * 50, 5)
    assert res.matched
    assert res.searched == 2


def test_ternary_family_registry():
    assert len(TERNARY_FORBIDDEN) == 10
    assert set(REFUTATION_ORDER["mu"]) == set(TERNARY_FORBIDDEN)
    assert set(REFUTATION_ORDER["nu"]) == set(TERNARY_FORBIDDEN)
    assert len(IMAGE_FORBIDDEN["mu"]) == 7
    assert len(IMAGE_FORBIDDEN["nu"]) == 4
    assert max(len(f) for f in IMAGE_FORBIDDEN["mu"]) == 19
    assert max(len(f) for f in IMAGE_FORBIDDEN["nu"]) == 16


@pytest.mark.slow
def test_factor_equivalence_image_languages():
    from palfree.structure import named_stream
    for kind, key in (("mu_p", "mu"), ("nu_p", "nu")):
        c = SearchConstraints(2, ExponentBound.parse("3"), None,
                              IMAGE_FORBIDDEN[key])
        ref = named_stream(kind).prefix(200000)
        res = factor_equivalence(c, ref, 30)
        assert res.matched, (kind, res.only_search[:3], res.only_reference[:3])
        assert res.searched == res.reference_count > 50
