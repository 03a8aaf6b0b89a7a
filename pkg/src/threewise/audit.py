"""The full verification pass behind `threewise verify-all`."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import lp
from .bounds import CHORD_HI, CHORD_LO, alpha, alpha_expr, f_t_limit, tilde_a, tilde_alpha
from .exactnum import P, prove_nonneg
from .setfam import (SetFamily, decompose_FI, decomposition_measure, is_rwise_t_intersecting,
                     is_shifted, is_upset, measure, shift, shift_closure, upward_closure)


@dataclass
class Section:
    name: str
    ok: bool
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)


# --- random families -------------------------------------------------------------

def random_family(rng: random.Random, n: int, size: int) -> SetFamily:
    return SetFamily(n, tuple(rng.randrange(1 << n) for _ in range(size)))


def random_shifted_upset(rng: random.Random, n: int, size: int) -> SetFamily:
    f = upward_closure(random_family(rng, n, size))
    while True:
        g = upward_closure(shift_closure(f))
        if g == f:
            return f
        f = g


POSET_CHAIN = [((), (3,)), ((3,), (2,)), ((2,), (1,)), ((1,), (1, 3)), ((1, 3), (1, 2)),
               ((1, 2), (1, 2, 3)), ((2,), (2, 3)), ((2, 3), (1, 3))]


def poset_chain_holds(f: SetFamily, p) -> bool:
    """x_0 <= x_3 <= x_2 <= x_1 <= x_13 <= x_12 <= x_123 and x_2 <= x_23 <= x_13."""
    parts = decompose_FI(f)
    x = {I: measure(g, p) for I, g in parts.items()}
    return all(x[frozenset(a)] <= x[frozenset(b)] for a, b in POSET_CHAIN)


def property_suite(seed: int = 0, cases: int = 200) -> dict[str, tuple[int, int]]:
    """Randomized invariant checks; returns name -> (cases, failures)."""
    rng = random.Random(seed)
    ps = [Fraction(1, 3), Fraction(2, 5), Fraction(9, 20), Fraction(1, 2), Fraction(3, 7)]
    results = {}

    def run(name, check):
        fails = sum(0 if check() else 1 for _ in range(cases))
        results[name] = (cases, fails)

    def shift_measure():
        n = rng.randint(2, 7)
        f = random_family(rng, n, rng.randint(0, 12))
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        p = rng.choice(ps)
        return measure(shift(f, i, j), p) == measure(f, p)

    def shift_intersection():
        n = rng.randint(3, 6)
        f = upward_closure(random_family(rng, n, rng.randint(1, 4)))
        r, t = rng.choice([(2, 1), (3, 1), (2, 2)])
        if not is_rwise_t_intersecting(f, r, t):
            return True
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        return is_rwise_t_intersecting(shift(f, i, j), r, t)

    def decomposition():
        n = rng.randint(4, 8)
        f = random_family(rng, n, rng.randint(0, 20))
        p = rng.choice(ps)
        return decomposition_measure(decompose_FI(f), p) == measure(f, p)

    def poset():
        n = rng.randint(4, 7)
        f = random_shifted_upset(rng, n, rng.randint(1, 5))
        return is_shifted(f) and is_upset(f) and poset_chain_holds(f, rng.choice(ps))

    def chord_point():
        # bounded denominators keep the f_t index (t-1)p/(1-2p) small near p = 1/2
        b = rng.randint(5, 400)
        a = rng.randint(-(-2 * b // 5), b // 2)
        return Fraction(a, b)

    def chord_alpha():
        p = chord_point()
        return (tilde_alpha().exact(p) - alpha(p)).sign() >= 0

    def chord_ft():
        p = chord_point()
        t = rng.randint(2, 5)
        return tilde_a(t).exact_fraction(p) >= f_t_limit(t, p)

    run("shift preserves measure", shift_measure)
    run("shift preserves r-wise t-intersection", shift_intersection)
    run("decomposition measure identity", decomposition)
    run("poset chain on shifted up-sets", poset)
    run("chord of alpha above alpha", chord_alpha)
    run("chords of f_t above f_t", chord_ft)
    return results


def chord_alpha_proof() -> str:
    """Status of the interval proof that the alpha chord stays above alpha on [2/5, 1/2]."""
    return prove_nonneg(tilde_alpha() - alpha_expr(), (CHORD_LO, CHORD_HI)).status


# --- certificate sections ---------------------------------------------------------

def _check_by_id(case_id: str) -> lp.CertificateReport:
    return lp.check_certificate(lp.certificate_by_id(case_id))


def certificate_reports(threads: int = 1) -> list[lp.CertificateReport]:
    ids = [c.case_id for c in lp.builtin_certificates()]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_check_by_id, ids))
    else:
        reports = [_check_by_id(i) for i in ids]
    return sorted(reports, key=lambda r: ids.index(r.case_id))


def canary_results() -> list[tuple[str, str, str]]:
    """(case, perturbed row, status) for every single-entry perturbation by -1/10."""
    out = []
    for cert in lp.builtin_certificates():
        for label in cert.lp.labels:
            rep = lp.check_certificate(cert.perturbed(label), fail_fast=True)
            out.append((cert.case_id, label, rep.status))
    for cert in lp.printed_variants():
        out.append((cert.case_id, "-", lp.check_certificate(cert).status))
    return out


def verify_all(threads: int = 1, seed: int = 0, property_cases: int = 200,
               progress=None) -> list[Section]:
    def say(msg):
        if progress is not None:
            print(msg, file=progress, flush=True)

    sections = []
    say("checking builtin certificates")
    reports = certificate_reports(threads)
    sec = Section("certificates", all(r.ok for r in reports))
    for r in reports:
        sec.lines.append(f"{r.case_id}: {r.status} ({r.seconds:.2f}s)")
    sec.data["reports"] = [r.to_json() for r in reports]
    sections.append(sec)

    say("checking C4 objective identities")
    certs = {c.case_id: c for c in lp.builtin_certificates()}
    target = 3 * P - (2 - 3 * P) * (3 * P - 1)
    sec = Section("c4 identity", True)
    for cid in ("C4-1", "C4-2", "C4-3"):
        rep = prove_nonneg(lp.dual_objective(certs[cid]) - target, lp.C4_INTERVAL)
        same = rep.method == "identity"
        sec.ok &= same
        sec.lines.append(f"{cid}: dual objective - (3p - eps_p) {'is' if same else 'is NOT'} identically 0")
    sections.append(sec)

    say("checking the G1-empty case and the theorem margin")
    g1 = lp.prove_G1_empty_case()
    margins = lp.theorem_margin_report()
    covered = lp.covers([m.interval for m in margins if m.case_id.startswith("C5-5")],
                        *lp.C5_INTERVAL) and \
        lp.covers([m.interval for m in margins if m.case_id.startswith("C5-6")], *lp.C5_INTERVAL)
    sec = Section("theorem margin", g1.ok and all(m.ok for m in margins) and covered)
    sec.lines.append(f"G1-empty bound below 4p^3q+p^4-1/100: {g1.status}")
    for m in margins:
        sec.lines.append(f"{m.case_id} on [{m.interval[0]}, {m.interval[1]}]: margin 0.0018 "
                         f"{m.report.status} ({m.report.method})")
    sec.lines.append(f"split subcases cover [2/5, 1/2]: {covered}")
    sections.append(sec)

    say("cross-checking weak duality with the exact simplex")
    sec = Section("weak duality", True)
    for cert in lp.builtin_certificates():
        samples = lp.weak_duality_check(cert)
        ok = all(s.ok for s in samples)
        sec.ok &= ok
        sec.lines.append(f"{cert.case_id}: {sum(s.ok for s in samples)}/{len(samples)} samples")
    sections.append(sec)

    say("running soundness canaries")
    canaries = canary_results()
    survivors = [c for c in canaries if c[2] == lp.PASS]
    sec = Section("canaries", not survivors)
    sec.lines.append(f"{len(canaries) - len(survivors)}/{len(canaries)} mutated certificates rejected")
    for c in survivors:
        sec.lines.append(f"NOT rejected: {c[0]} row {c[1]}")
    sections.append(sec)

    say("running property suites")
    props = property_suite(seed, property_cases)
    chord = chord_alpha_proof()
    sec = Section("properties", all(f == 0 for _, f in props.values()) and chord == "SUCCESS")
    for name, (n, f) in props.items():
        sec.lines.append(f"{name}: {n - f}/{n}")
    sec.lines.append(f"alpha chord above alpha on [2/5, 1/2]: {chord}")
    sections.append(sec)
    return sections

