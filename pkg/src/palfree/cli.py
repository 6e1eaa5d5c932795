"""Command-line front end: verifications as replayable certificates.

Exit codes: 0 every check passed, 1 some check failed, 2 inconclusive
(resource cap hit) with nothing failing.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
import time
from fractions import Fraction

from . import rauzy as rauzy_mod
from . import search as search_mod
from . import structure as structure_mod
from . import transfer as transfer_mod
from .certificates import (FAIL, INCONCLUSIVE, PASS, Certificate,
                           compare_certificates, read_certificate)
from .repetition import ExponentBound, critical_exponent, is_free
from .words import palindrome_count, reverse


def _default_jobs() -> int:
    return int(os.environ.get("PALFREE_JOBS", os.cpu_count() or 1))


def _default_nodes() -> int | None:
    v = os.environ.get("PALFREE_NODE_BUDGET")
    return int(v) if v else None


def _bound_from_args(exp: str | None, strict: str | None) -> ExponentBound | None:
    if exp in (None, "", "none", "inf"):
        return None
    b = ExponentBound.parse(exp)
    if strict is not None:
        b = ExponentBound(b.threshold, strict == "true")
    return b


def _cmdline(args: list[str]) -> str:
    return " ".join(shlex.quote(a) for a in args)


# ---------------------------------------------------------------------------
# certificate builders


def cert_verify_morphism(instance: str, window: int | None, depth: int | None) -> Certificate:
    argv = ["verify-morphism", "--instance", instance]
    if window is not None:
        argv += ["--window", str(window)]
    if depth is not None:
        argv += ["--depth", str(depth)]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    inst = transfer_mod.load_instance(instance)
    tr = transfer_mod.verify_transfer(inst, depth)
    cert.put("q", tr.q)
    cert.put("synchronizing", "yes")
    cert.put("source-bound", inst.source_bound)
    cert.put("target-bound", inst.target_bound)
    cert.put("threshold", tr.threshold)
    cert.put("check-depth", tr.depth)
    cert.put("source-words-checked", tr.words_checked)
    cert.put("image-freeness", "pass" if tr.passed else "fail")
    if not tr.passed:
        cert.put("violating-source", tr.violation_source)
        cert.put("violation", tr.violation)
        cert.wall_ms = int((time.monotonic() - t0) * 1000)
        return cert
    pal = transfer_mod.verify_palindrome_budget(inst, window)
    cert.put("palindrome-window", pal.window)
    cert.put("palindrome-count", pal.count)
    cert.put("claimed-budget", pal.budget)
    cert.put("cut-index", pal.cut_index if pal.cut_index is not None else "none")
    cert.put("stabilized", "yes" if pal.stabilized else "no")
    cert.lists["palindromes"] = ["(empty word)"] + pal.palindromes
    if pal.passed and pal.stabilized:
        cert.outcome = PASS
    elif not pal.conclusive:
        cert.outcome = INCONCLUSIVE
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_optimality(alphabet: int, exp: str | None, strict: str | None, pal: int | None,
                    cap: int, nodes: int | None, symmetry: bool,
                    forbidden: tuple[str, ...] = ()) -> Certificate:
    argv = ["optimality", "--alphabet", str(alphabet)]
    if exp:
        argv += ["--exp", exp]
    if strict is not None:
        argv += ["--strict", strict]
    if pal is not None:
        argv += ["--pal", str(pal)]
    argv += ["--cap", str(cap)]
    if nodes is not None:
        argv += ["--nodes", str(nodes)]
    if symmetry:
        argv += ["--symmetry"]
    for f in forbidden:
        argv += ["--forbid", f]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    bound = _bound_from_args(exp, strict)
    c = search_mod.SearchConstraints(alphabet, bound, pal, tuple(forbidden))
    cert.put("constraints", c.describe())
    cert.put("depth-cap", cap)
    cert.put("symmetry-reduced", "yes" if symmetry else "no")
    result = search_mod.search(c, cap, node_budget=nodes, symmetry=symmetry)
    if isinstance(result, search_mod.ExhaustionCertificate):
        cert.outcome = PASS
        cert.put("result", "exhausted")
        cert.put("max-depth-reached", result.max_depth_reached)
        cert.put("nodes-visited", result.nodes_visited)
        cert.put("longest-count", result.longest_count)
        cert.lists["longest-words"] = result.longest_words
    elif isinstance(result, search_mod.Reached):
        cert.outcome = FAIL
        cert.put("result", "reached")
        cert.put("nodes-visited", result.nodes_visited)
        cert.lists["witness"] = [result.witness]
    else:
        cert.outcome = INCONCLUSIVE
        cert.put("result", "inconclusive")
        cert.put("max-depth-reached", result.max_depth_reached)
        cert.put("nodes-visited", result.nodes_visited)
        cert.lists["frontier"] = result.frontier
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_growth(pal: int, max_n: int, window: int | None, expect: float | None,
                tol: float) -> Certificate:
    argv = ["growth", "--pal", str(pal), "--max-n", str(max_n)]
    if window is not None:
        argv += ["--window", str(window)]
    if expect is not None:
        argv += ["--expect", repr(expect), "--tol", repr(tol)]
    cert = Certificate(_cmdline(argv), PASS)
    t0 = time.monotonic()
    c = search_mod.SearchConstraints(2, None, pal)
    counts = search_mod.count_words(c, max_n, symmetry=True)
    est = search_mod.estimate_growth(counts, window)
    cert.put("palindrome-budget", pal)
    cert.put("max-n", max_n)
    cert.put("estimate", f"{est:.10f}")
    if expect is not None:
        cert.put("expected", f"{expect:.10f}")
        cert.put("difference", f"{abs(est - expect):.2e}")
        cert.outcome = PASS if abs(est - expect) <= tol else FAIL
    cert.lists["counts"] = [f"{n} {x}" for n, x in enumerate(counts)]
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_preimage(morphism: str, family: str | None, target: str | None) -> Certificate:
    argv = ["preimage-prove", "--morphism", morphism]
    if family:
        argv += ["--family", family]
    if target:
        argv += ["--target", target]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    expected_family = search_mod.FAMILY_NAMES[morphism]
    if family and family != expected_family:
        raise SystemExit(f"morphism {morphism} carries family {expected_family}")
    from .morphisms import load_morphism
    m = load_morphism(morphism)
    image_forbidden = search_mod.IMAGE_FORBIDDEN[morphism]
    if target is not None:
        order = search_mod.REFUTATION_ORDER[morphism]
        if target not in order:
            raise SystemExit(f"{target} is not in the shipped forbidden family")
        known = order[:order.index(target)]
        log = search_mod.prove_preimage_forbidden(
            m, target, image_forbidden, known, morphism_name=morphism)
        logs = [log] if log else []
        failed = None if log else target
    else:
        logs, failed = search_mod.run_preimage_family(morphism)
    cert.put("morphism", morphism)
    cert.put("image-forbidden-family", expected_family)
    cert.put("members-refuted", len(logs))
    replays = 0
    for log in logs:
        ok = search_mod.replay_proof(log, m, image_forbidden)
        replays += 1 if ok else 0
        cert.put(f"refuted-{log.target}",
                 f"depth={log.depth} tree-size={log.size()} replay={'ok' if ok else 'FAIL'}")
        cert.lists[f"proof-{log.target}"] = log.text().splitlines()
    cert.put("replays-ok", replays)
    if failed is None and replays == len(logs) and logs:
        cert.outcome = PASS
    elif failed is not None:
        cert.put("first-unrefuted", failed)
        cert.outcome = INCONCLUSIVE
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_rauzy(exp: str, strict: str | None, pal: int, ell: int, mode: str,
               margin: int | None, trim: bool, compare: str | None,
               select_avoiding: str | None, nodes: int | None,
               symmetry: bool) -> Certificate:
    argv = ["rauzy", "--exp", exp]
    if strict is not None:
        argv += ["--strict", strict]
    argv += ["--pal", str(pal), "--ell", str(ell), "--mode", mode]
    if margin is not None:
        argv += ["--margin", str(margin)]
    if trim:
        argv += ["--trim"]
    if compare:
        argv += ["--compare", compare]
    if select_avoiding:
        argv += ["--select-avoiding", select_avoiding]
    if nodes is not None:
        argv += ["--nodes", str(nodes)]
    if not symmetry:
        argv += ["--no-symmetry"]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    bound = _bound_from_args(exp, strict)
    try:
        survivors, stats = rauzy_mod.survivor_set(bound, pal, ell, margin,
                                                  symmetry=symmetry,
                                                  node_budget=nodes)
    except search_mod.BudgetExceeded as exc:
        cert.outcome = INCONCLUSIVE
        cert.put("result", "node budget exceeded")
        cert.put("nodes-visited", exc.stats["nodes"])
        cert.wall_ms = int((time.monotonic() - t0) * 1000)
        return cert
    cert.put("exponent-bound", bound)
    cert.put("palindrome-budget", pal)
    cert.put("ell", ell)
    cert.put("margin", stats["margin"])
    cert.put("symmetry-reduced", "yes" if stats["symmetry"] else "no")
    cert.put("survivors", len(survivors))
    cert.put("search-nodes", stats["nodes"])
    arcs = rauzy_mod.trim_to_essential(survivors) if trim else frozenset(survivors)
    cert.put("trimmed", "yes" if trim else "no")
    cert.put("arcs", len(arcs))
    graph = rauzy_mod.build_rauzy(arcs)
    comps = rauzy_mod.components(graph, mode)
    cert.put("mode", mode)
    cert.put("components", len(comps))
    cert.put("component-sizes", " ".join(str(len(c)) for c in comps))
    ok = True
    try:
        orbits = rauzy_mod.symmetry_orbits(comps)
        cert.put("orbits", len(orbits.orbits))
        cert.put("orbit-sizes", " ".join(str(len(o)) for o in orbits.orbits))
    except ValueError as exc:
        cert.put("orbits", f"error: {exc}")
        ok = False
    if select_avoiding:
        chosen = [i for i, c in enumerate(comps) if c.avoids(select_avoiding)]
        cert.put("components-avoiding-" + select_avoiding,
                 " ".join(map(str, chosen)) if chosen else "none")
        if len(chosen) != 1:
            ok = False
    if compare:
        stream = structure_mod.named_stream(compare)
        need = 4 * ell * 200
        text = stream.prefix(need)
        ref = rauzy_mod.RauzyGraph.of_word(text, ell)
        ref2 = rauzy_mod.RauzyGraph.of_word(stream.prefix(2 * need), ell)
        cert.put("reference", compare)
        cert.put("reference-stabilized", "yes" if ref == ref2 else "no")
        if select_avoiding and len(chosen) == 1:
            sel = comps[chosen[0]]
            same = sel == ref
            cert.put("selected-equals-reference", "yes" if same else "no")
            cert.put("reference-arcs", len(ref.arcs))
            cert.put("reference-vertices", len(ref.vertices))
            ok = ok and same and ref == ref2
        else:
            ok = False
        forb = {"mu_p": search_mod.IMAGE_FORBIDDEN["mu"],
                "nu_p": search_mod.IMAGE_FORBIDDEN["nu"]}.get(compare)
        if forb:
            longest = max(len(f) for f in forb)
            cert.put("bridge-check",
                     f"max-forbidden-length {longest} <= ell {ell}: "
                     + ("yes" if longest <= ell else "no"))
            ok = ok and longest <= ell
    if ok and len(comps) == 4:
        cert.outcome = PASS
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_exponent(word: str, method: str, prefix: int, max_bs: int,
                  expect: str | None, bound: str | None) -> Certificate:
    argv = ["exponent", "--word", word, "--method", method]
    if method == "empirical":
        argv += ["--prefix", str(prefix)]
    if method == "bispecial":
        argv += ["--max-bs", str(max_bs)]
    if expect:
        argv += ["--expect", expect]
    if bound:
        argv += ["--bound", bound]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    cert.put("word", word)
    cert.put("method", method)
    if method == "empirical":
        stream = structure_mod.named_stream(word)
        text = stream.prefix(prefix)
        cert.put("prefix-length", len(text))
        if bound:
            b = ExponentBound.parse(bound)
            v = is_free(text, b)
            cert.put("bound", b)
            cert.put("free", "yes" if v is None else f"no: {v}")
            cert.outcome = PASS if v is None else FAIL
        else:
            e, witness = critical_exponent(text, with_witness=True)
            cert.put("critical-exponent", e)
            period = len(witness) * e.denominator // e.numerator
            cert.put("witness-period", witness[:period])
            cert.put("witness-length", len(witness))
            if expect:
                cert.put("expected", expect)
                cert.outcome = PASS if e == Fraction(expect) else FAIL
            else:
                cert.outcome = PASS
    elif method == "bispecial":
        rep = structure_mod.structural_exponent(word)
        cert.put("critical-exponent", rep.exponent)
        cert.put("maximizing-family",
                 min(f for f, r in rep.families.items() if r.sup == rep.witness_ratio))
        cert.put("maximizing-ratio", rep.witness_ratio)
        cert.put("witness", rep.witness_word)
        for fam, r in sorted(rep.families.items()):
            tailtxt = ""
            if r.tail is not None:
                tailtxt = f" tail-n0={r.tail.n0} tail-holds={'yes' if r.tail.holds else 'no'}"
            cert.put(f"family-{fam}",
                     f"sup={r.sup} at={r.sup_index} bounded={'yes' if r.bounded_by_target else 'no'}"
                     + tailtxt)
        ok = all(r.bounded_by_target for r in rep.families.values())
        if expect:
            cert.put("expected", expect)
            ok = ok and rep.exponent == Fraction(expect)
        cert.outcome = PASS if ok else FAIL
    elif method == "closed-form":
        iv = structure_mod.asymptotic_exponent(word)
        cert.put("asymptotic-exponent", f"{float(iv.mid):.12f}")
        cert.put("interval-width", f"{float(iv.width):.3e}")
        beta = structure_mod.cubic.perron_root()
        cert.put("perron-root", f"{float(beta.mid):.12f}")
        ok = iv.width <= Fraction(1, 10 ** 10)
        if expect:
            cert.put("expected", expect)
            near = abs(iv.mid - Fraction(expect)) < Fraction(1, 200)
            ok = ok and near
        cert.outcome = PASS if ok else FAIL
    else:
        raise SystemExit(f"unknown method {method}")
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_structure(word: str, max_bs: int, complexity_n: int) -> Certificate:
    argv = ["structure", "--word", word, "--max-bs", str(max_bs),
            "--complexity-n", str(complexity_n)]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    stream = structure_mod.named_stream(word)
    ok = True
    if word == "p":
        comp = structure_mod.factor_complexity(stream, complexity_n)
        bad = [n for n in range(1, complexity_n + 1) if comp[n] != 2 * n + 1]
        cert.put("complexity-2n+1-upto", complexity_n)
        cert.put("complexity-ok", "yes" if not bad else f"fails at {bad[:5]}")
        ok = ok and not bad
        text = stream.prefix(100000)
        cert.put("has-02", "yes" if "02" in text else "no")
        cert.put("has-20", "yes" if "20" in text else "no")
        ok = ok and "02" in text and "20" not in text
    profiles = structure_mod.bispecial_enumerate(stream, max_bs)
    cert.put("bispecial-count", len(profiles))
    fam_words = {}
    if word in ("p", "nu_p", "mu_p"):
        fams = "ABCD"
        for fam in fams:
            n = 1 if (fam == "A" and word == "mu_p") else 0
            while True:
                try:
                    fw = structure_mod.family_bispecial(word, fam, n)
                except ValueError:
                    break
                if len(fw) > max_bs:
                    break
                fam_words[fw] = (fam, n)
                n += 1
    lines = []
    all_ordinary = True
    all_classified = True
    returns_ok = True
    for prof in profiles:
        rw = structure_mod.return_words(prof.word, stream)
        shortest = len(rw.shortest())
        tag = fam_words.get(prof.word)
        extra = {"nu_p": ("01", "10", "0", "1"),
                 "mu_p": ("0", "1", "01", "10", "010", "1001", "011001",
                          "100101", "01100101"),
                 "p": ()}.get(word, ())
        if tag is None and prof.word not in extra:
            all_classified = False
        if prof.b != 0:
            all_ordinary = False
        if tag is not None and word == "p":
            want = structure_mod.expected_shortest_return_length(word, *tag)
            if want != shortest:
                returns_ok = False
        nret = len(rw.returns)
        lines.append(f"{prof.word} b={prof.b} kind={prof.kind} "
                     f"family={tag[0] if tag else '-'} n={tag[1] if tag else '-'} "
                     f"shortest-return={shortest} returns={nret}")
        if word == "p" and nret != 3:
            returns_ok = False
    cert.lists["bispecials"] = lines
    cert.put("all-ordinary", "yes" if all_ordinary else "no")
    cert.put("all-classified", "yes" if all_classified else "no")
    if word == "p":
        cert.put("corollary-return-lengths", "yes" if returns_ok else "no")
        r1 = structure_mod.return_words("1", stream)
        r10 = structure_mod.return_words("10", stream)
        cert.put("returns-to-1", " ".join(sorted(r1.returns)))
        cert.put("returns-to-10", " ".join(sorted(r10.returns)))
        ok = ok and sorted(r1.returns) == ["10", "102", "12"] \
            and sorted(r10.returns) == ["10", "1012", "102"]
        ok = ok and all_ordinary and returns_ok
    ok = ok and all_classified
    cert.outcome = PASS if ok else FAIL
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_palindromes(word: str, prefix: int, expect: int | None) -> Certificate:
    argv = ["palindromes", "--word", word, "--prefix", str(prefix)]
    if expect is not None:
        argv += ["--expect", str(expect)]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    stream = structure_mod.named_stream(word)
    n1 = palindrome_count(stream.prefix(prefix))
    n2 = palindrome_count(stream.prefix(2 * prefix))
    cert.put("word", word)
    cert.put("prefix", prefix)
    cert.put("count", n1)
    cert.put("stabilized", "yes" if n1 == n2 else "no")
    ok = n1 == n2
    if expect is not None:
        cert.put("expected", expect)
        ok = ok and n1 == expect
    cert.outcome = PASS if ok else FAIL
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


def cert_splice(prefix: int, center: int) -> Certificate:
    """The glued word reverse(nu_p) . 010110 . nu_p: its central factor is
    5/2+-free, and the witness word separating it from nu_p's language is a
    prefix of 110 nu_p but no factor of nu_p or its reversal."""
    argv = ["splice", "--prefix", str(prefix), "--center", str(center)]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    stream = structure_mod.named_stream("nu_p")
    text = stream.prefix(prefix)
    glue = "010110"
    half = (center - len(glue)) // 2
    central = reverse(text[:half]) + glue + text[:half]
    cert.put("central-length", len(central))
    b = ExponentBound.parse("5/2+")
    v = is_free(central, b)
    cert.put("central-free-5/2+", "yes" if v is None else f"no: {v}")
    marker = "110011001001101"
    cert.put("marker", marker)
    pref_ok = ("110" + text).startswith(marker)
    cert.put("marker-prefix-of-110nu", "yes" if pref_ok else "no")
    in_nu = marker in text
    in_rev = marker in reverse(text)
    cert.put("marker-in-nu", "yes" if in_nu else "no")
    cert.put("marker-in-reverse", "yes" if in_rev else "no")
    if v is None and pref_ok and not in_nu and not in_rev:
        cert.outcome = PASS
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


# ---------------------------------------------------------------------------
# Table 1 cell classification

GREEN_ANCHORS = {
    "thm3a": (11, Fraction(10, 3)),
    "thm3b": (12, Fraction(23, 7)),
    "thm3c": (13, Fraction(3)),
    "thm3d": (15, Fraction(8, 3)),
    "thm3e": (18, Fraction(13, 5)),
    "thm3f": (19, Fraction(28, 11)),
    "thm3g": (21, Fraction(5, 2)),
    "thm3h": (25, Fraction(7, 3)),
}

RED_CELLS = {
    (18, Fraction(28, 11)): "mu_p",
    (20, Fraction(5, 2)): "nu_p",
    (9, None): "001011",
    (10, None): "001011",
}

COLUMNS = [Fraction(2), Fraction(7, 3), Fraction(5, 2), Fraction(28, 11),
           Fraction(13, 5), Fraction(8, 3), Fraction(3), Fraction(23, 7),
           Fraction(10, 3), None]


def classify_cell(p: int, beta: Fraction | None) -> tuple[str, str | None]:
    """(classification, detail): green cells cite the dominating transfer
    instance, red cells the structured witness, empty cells nothing."""
    if (p, beta) in RED_CELLS:
        return "red", RED_CELLS[(p, beta)]
    for name, (p0, b0) in sorted(GREEN_ANCHORS.items()):
        if p >= p0 and (beta is None or beta >= b0):
            return "green", name
    if beta is None and p >= 9:
        return "red", "001011"
    return "empty", None


def cert_table1(p: int, beta: str, cap: int, nodes: int | None) -> Certificate:
    argv = ["table1", "--p", str(p), "--beta", beta, "--cap", str(cap)]
    if nodes:
        argv += ["--nodes", str(nodes)]
    cert = Certificate(_cmdline(argv), FAIL)
    t0 = time.monotonic()
    bfrac = None if beta in ("inf", "none") else Fraction(beta)
    if bfrac is not None and bfrac not in COLUMNS:
        cert.put("cell", f"p={p} beta={beta}")
        cert.put("classification", "unclassified")
        cert.outcome = INCONCLUSIVE
        return cert
    cls, detail = classify_cell(p, bfrac)
    cert.put("cell", f"p={p} beta={beta}+")
    cert.put("classification", cls)
    if cls == "green":
        cert.put("witness-instance", detail)
        sub = cert_verify_morphism(detail, None, None)
        cert.put("transfer-outcome", sub.outcome)
        budget = int(sub.evidence.get("palindrome-count", "99"))
        cert.put("palindromes-within-cell", "yes" if budget <= p else "no")
        cert.outcome = sub.outcome if budget <= p else FAIL
    elif cls == "red" and detail in ("mu_p", "nu_p"):
        cert.put("witness-word", detail)
        expect = {"mu_p": 18, "nu_p": 20}[detail]
        pal = cert_palindromes(detail, 100000, expect)
        cert.put("palindrome-outcome", pal.outcome)
        exp = cert_exponent(detail, "empirical", 100000, 0,
                            str(bfrac), None)
        cert.put("exponent-outcome", exp.outcome)
        cert.put("palindromes", pal.evidence["count"])
        cert.put("critical-exponent", exp.evidence["critical-exponent"])
        ok = pal.outcome == PASS and exp.outcome == PASS and expect <= p
        cert.outcome = PASS if ok else FAIL
    elif cls == "red":
        word = detail * (2000 // len(detail))
        n = palindrome_count(word)
        cert.put("witness-word", f"({detail})^w")
        cert.put("palindromes", n)
        cert.outcome = PASS if n <= p else FAIL
    else:
        bound = f"{beta}+" if bfrac is not None else None
        sub = cert_optimality(2, bound, None, p, cap, nodes, True)
        cert.put("nonexistence-search", sub.outcome)
        for k in ("max-depth-reached", "nodes-visited", "result"):
            if k in sub.evidence:
                cert.put(k, sub.evidence[k])
        cert.outcome = sub.outcome
    cert.wall_ms = int((time.monotonic() - t0) * 1000)
    return cert


# ---------------------------------------------------------------------------
# dispatch

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="palfree",
                                 description="verification toolkit for "
                                             "palindrome-scarce repetition-free words")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("verify-morphism", help="freeness transfer + palindrome budget")
    s.add_argument("--instance", required=True, choices=transfer_mod.shipped_instances())
    s.add_argument("--window", type=int)
    s.add_argument("--depth", type=int)

    s = sub.add_parser("optimality", help="nonexistence search certificate")
    s.add_argument("--alphabet", type=int, default=2)
    s.add_argument("--exp")
    s.add_argument("--strict", choices=("true", "false"))
    s.add_argument("--pal", type=int)
    s.add_argument("--cap", type=int, default=400)
    s.add_argument("--nodes", type=int, default=_default_nodes())
    s.add_argument("--symmetry", action="store_true")
    s.add_argument("--forbid", action="append", default=[])

    s = sub.add_parser("growth", help="exact counts and growth estimate")
    s.add_argument("--pal", type=int, required=True)
    s.add_argument("--max-n", type=int, default=60)
    s.add_argument("--window", type=int)
    s.add_argument("--expect", type=float)
    s.add_argument("--tol", type=float, default=0.01)

    s = sub.add_parser("preimage-prove", help="refute forbidden factors in pre-images")
    s.add_argument("--morphism", required=True, choices=("mu", "nu"))
    s.add_argument("--family", choices=("F18", "F20"))
    s.add_argument("--target")

    s = sub.add_parser("rauzy", help="survivor windows, components, comparison")
    s.add_argument("--exp", required=True)
    s.add_argument("--strict", choices=("true", "false"))
    s.add_argument("--pal", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--mode", choices=("weak", "strong"), default="weak")
    s.add_argument("--margin", type=int)
    s.add_argument("--trim", action="store_true")
    s.add_argument("--compare")
    s.add_argument("--select-avoiding")
    s.add_argument("--nodes", type=int, default=_default_nodes())
    s.add_argument("--no-symmetry", action="store_true")

    s = sub.add_parser("exponent", help="critical exponents three ways")
    s.add_argument("--word", required=True)
    s.add_argument("--method", choices=("empirical", "bispecial", "closed-form"),
                   default="empirical")
    s.add_argument("--prefix", type=int, default=100000)
    s.add_argument("--max-bs", type=int, default=500)
    s.add_argument("--expect")
    s.add_argument("--bound")

    s = sub.add_parser("structure", help="bispecial factors, families, return words")
    s.add_argument("--word", required=True)
    s.add_argument("--max-bs", type=int, default=200)
    s.add_argument("--complexity-n", type=int, default=500)
    s.add_argument("--report", choices=("families",), default="families")

    s = sub.add_parser("palindromes", help="stabilized distinct-palindrome count")
    s.add_argument("--word", required=True)
    s.add_argument("--prefix", type=int, default=100000)
    s.add_argument("--expect", type=int)

    s = sub.add_parser("splice", help="the glued word around 010110")
    s.add_argument("--prefix", type=int, default=100000)
    s.add_argument("--center", type=int, default=200)

    s = sub.add_parser("table1", help="classify and verify one cell")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--beta", required=True, help="column bound like 8/3, or inf")
    s.add_argument("--cap", type=int, default=400)
    s.add_argument("--nodes", type=int)

    s = sub.add_parser("replay", help="re-run a certificate and compare")
    s.add_argument("file")

    s = sub.add_parser("verify-all", help="run the built-in verification battery")
    s.add_argument("--jobs", type=int, default=_default_jobs())
    s.add_argument("--deep", action="store_true",
                   help="include the ell=78 strong-component run (minutes)")
    s.add_argument("--out-dir")

    for name, parser in sub.choices.items():
        if name not in ("replay", "verify-all"):
            parser.add_argument("--out", help="write the certificate to a file")
    return ap


def run_command(argv: list[str]) -> Certificate:
    args = build_parser().parse_args(argv)
    return _dispatch(args)


def _dispatch(args) -> Certificate:
    if args.cmd == "verify-morphism":
        return cert_verify_morphism(args.instance, args.window, args.depth)
    if args.cmd == "optimality":
        return cert_optimality(args.alphabet, args.exp, args.strict, args.pal,
                               args.cap, args.nodes, args.symmetry,
                               tuple(args.forbid))
    if args.cmd == "growth":
        return cert_growth(args.pal, args.max_n, args.window, args.expect, args.tol)
    if args.cmd == "preimage-prove":
        return cert_preimage(args.morphism, args.family, args.target)
    if args.cmd == "rauzy":
        return cert_rauzy(args.exp, args.strict, args.pal, args.ell, args.mode,
                          args.margin, args.trim, args.compare,
                          args.select_avoiding, args.nodes, not args.no_symmetry)
    if args.cmd == "exponent":
        return cert_exponent(args.word, args.method, args.prefix, args.max_bs,
                             args.expect, args.bound)
    if args.cmd == "structure":
        return cert_structure(args.word, args.max_bs, args.complexity_n)
    if args.cmd == "palindromes":
        return cert_palindromes(args.word, args.prefix, args.expect)
    if args.cmd == "splice":
        return cert_splice(args.prefix, args.center)
    if args.cmd == "table1":
        return cert_table1(args.p, args.beta, args.cap, args.nodes)
    raise SystemExit(f"unhandled command {args.cmd}")


BATTERY = [
    ("transfer-thm3a", "verify-morphism --instance thm3a"),
    ("transfer-thm3b", "verify-morphism --instance thm3b"),
    ("transfer-thm3c", "verify-morphism --instance thm3c"),
    ("transfer-thm3d", "verify-morphism --instance thm3d"),
    ("transfer-thm3e", "verify-morphism --instance thm3e"),
    ("transfer-thm3f", "verify-morphism --instance thm3f"),
    ("transfer-thm3g", "verify-morphism --instance thm3g"),
    ("transfer-thm3h", "verify-morphism --instance thm3h"),
    ("palindromes-baseline", "palindromes --word 001011 --prefix 100000 --expect 9"),
    ("palindromes-mu", "palindromes --word mu_p --prefix 100000 --expect 18"),
    ("palindromes-nu", "palindromes --word nu_p --prefix 100000 --expect 20"),
    ("exponent-nu-empirical", "exponent --word nu_p --method empirical --prefix 100000 --expect 5/2"),
    ("exponent-mu-empirical", "exponent --word mu_p --method empirical --prefix 100000 --expect 28/11"),
    ("exponent-nu-structural", "exponent --word nu_p --method bispecial --expect 5/2"),
    ("exponent-mu-structural", "exponent --word mu_p --method bispecial --expect 28/11"),
    ("exponent-closed-form", "exponent --word p --method closed-form --expect 2.48"),
    ("structure-p", "structure --word p --max-bs 200 --complexity-n 500"),
    ("preimage-mu", "preimage-prove --morphism mu --family F18"),
    ("preimage-nu", "preimage-prove --morphism nu --family F20"),
    ("rauzy-mu", "rauzy --exp 13/5 --strict false --pal 18 --ell 20 --mode weak "
                 "--margin 40 --trim --compare mu_p --select-avoiding 1101"),
    ("optimality-pal8", "optimality --alphabet 2 --pal 8 --cap 400 --symmetry"),
    ("optimality-cubefree14", "optimality --alphabet 2 --exp 3 --strict false "
                              "--pal 14 --cap 400 --symmetry"),
    ("growth-pal11", "growth --pal 11 --max-n 60 --expect 1.1127756842787 --tol 0.01"),
    ("splice-x", "splice --prefix 100000 --center 200"),
]

DEEP_BATTERY = [
    ("rauzy-nu", "rauzy --exp 28/11 --strict false --pal 20 --ell 78 --mode strong "
                 "--margin 78 --compare nu_p --select-avoiding 1011"),
]


def _battery_job(item):
    name, cmd = item
    cert = run_command(shlex.split(cmd))
    return name, cert.render()


def cmd_verify_all(args) -> int:
    jobs = list(BATTERY) + (list(DEEP_BATTERY) if args.deep else [])
    results = {}
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for name, rendered in pool.map(_battery_job, jobs):
                results[name] = rendered
    else:
        for item in jobs:
            name, rendered = _battery_job(item)
            results[name] = rendered
    from .certificates import parse_certificate
    codes = []
    for name, _cmd in jobs:
        cert = parse_certificate(results[name])
        codes.append(cert.exit_code)
        mark = {0: "PASS", 1: "FAIL", 2: "INCONCLUSIVE"}[cert.exit_code]
        print(f"{mark:12s} {name}")
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            with open(os.path.join(args.out_dir, name + ".cert"), "w") as fh:
                fh.write(results[name])
    if any(c == 1 for c in codes):
        return 1
    if any(c == 2 for c in codes):
        return 2
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.cmd == "verify-all":
        return cmd_verify_all(args)
    if args.cmd == "replay":
        old = read_certificate(args.file)
        new = run_command(shlex.split(old.command))
        report = compare_certificates(old, new)
        if report.matched:
            print(f"replay ok: {old.command}")
            return 0
        print(f"replay MISMATCH: {old.command}")
        for d in report.differences:
            print("  " + d)
        return 1
    cert = _dispatch(args)
    out = getattr(args, "out", None)
    if out:
        cert.write(out)
    sys.stdout.write(cert.render())
    return cert.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
