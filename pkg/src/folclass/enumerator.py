"""Exhaustive verification over small fields: enumerate every candidate
triple (deg a, b <= 1, deg c <= 3), filter by the admissibility conditions,
deduplicate scalar orbits, and check the family taxonomy both ways
(soundness: every instance is admissible; completeness: every admissible
scalar class is matched).

The scan works on packed coefficient indices with flat field tables; in
characteristic 2 index addition is XOR.  For each (a, b) pair the first
minor takes the form K(a,b) + c*P(a,b) with P a scalar, so the inner loop
over all q^4 values of c costs four table lookups per candidate before the
rare full check.  The coefficient space is partitioned into contiguous
blocks of a-indices; workers scan blocks independently and results are
merged in block order, so the report is identical for any worker count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .classifier import FamilyId, classify, families_of_case, instantiate
from .derivation import DerivationTriple, LieCase, is_valid_foliation
from .errors import ConsistencyError
from .finite_field import FieldSpec
from .polynomial import Poly

# ---------------------------------------------------------------------------
# object-level enumeration (reference path; the scan below must agree with it)
# ---------------------------------------------------------------------------


def _poly_from_index(spec, idx, max_deg):
    coeffs = []
    for _ in range(max_deg + 1):
        coeffs.append(spec.element(idx % spec.order))
        idx //= spec.order
    return Poly(spec, tuple(coeffs))


def enumerate_triples(spec, case):
    """Deterministic stream of all candidate triples except (0, 0, 0).

    Order is lexicographic on (index of a, index of b, index of c) where a
    polynomial's index encodes its coefficients with the constant one least
    significant; the first triple is (0, 0, 1).
    """
    if spec.p != 2:
        raise ValueError("enumeration is specific to characteristic 2")
    q = spec.order
    lines = [_poly_from_index(spec, i, 1) for i in range(q * q)]
    cubics = [_poly_from_index(spec, i, 3) for i in range(q**4)]
    for ia, a in enumerate(lines):
        for ib, b in enumerate(lines):
            for ic, c in enumerate(cubics):
                if ia == 0 and ib == 0 and ic == 0:
                    continue
                yield DerivationTriple(case, a, b, c)


def total_triple_count(spec):
    return spec.order**8 - 1


# ---------------------------------------------------------------------------
# packed scan
# ---------------------------------------------------------------------------

_SCAN_CACHE: dict = {}


def _scan_tables(field_key):
    tables = _SCAN_CACHE.get(field_key)
    if tables is None:
        p, k, modulus = field_key
        spec = FieldSpec(p, k, modulus)
        q, _add, mul, inv = spec.tables()
        pairs = tuple((i % q, i // q) for i in range(q * q))
        quads = tuple(
            (i % q, (i // q) % q, (i // (q * q)) % q, i // (q * q * q)) for i in range(q**4)
        )
        tables = (q, mul, inv, pairs, quads)
        _SCAN_CACHE[field_key] = tables
    return tables


def _packed_gcd_is_unit(polys, q, mul, inv):
    """gcd of the nonzero packed coefficient tuples is a nonzero constant."""
    current = None
    for f in polys:
        g = list(f)
        while g and g[-1] == 0:
            g.pop()
        if not g:
            continue
        if current is None:
            current = g
            continue
        # euclid: current, g -> gcd
        fpoly, gpoly = current, g
        while gpoly:
            # reduce fpoly mod gpoly
            dlead = inv[gpoly[-1]]
            dd = len(gpoly) - 1
            rem = fpoly[:]
            for i in range(len(rem) - 1, dd - 1, -1):
                cc = rem[i]
                if cc:
                    qq = mul[cc * q + dlead]
                    for j in range(dd + 1):
                        rem[i - dd + j] ^= mul[qq * q + gpoly[j]]
            while rem and rem[-1] == 0:
                rem.pop()
            fpoly, gpoly = gpoly, rem
        current = fpoly
        if len(current) == 1:
            return True
    return current is not None and len(current) == 1


def _scan_block(args):
    """Scan one contiguous block of a-indices; return packed valid triples."""
    field_key, case_name, ia_start, ia_end = args
    q, mul, inv, pairs, quads = _scan_tables(field_key)
    alpha_sq, beta_sq = LieCase[case_name].alpha_sq, LieCase[case_name].beta_sq
    q2 = q * q
    out = []
    for ia in range(ia_start, ia_end):
        a0, a1 = pairs[ia]
        as0 = mul[a0 * q + a0]
        as2 = mul[a1 * q + a1]
        a_deg1 = a1 != 0
        for ib in range(q2):
            b0, b1 = pairs[ib]
            # first minor is K + c*P with scalar P = a1*b0 + b1*a0
            P = mul[a1 * q + b0] ^ mul[b1 * q + a0]
            if case_name == "I":
                K0 = K1 = K2 = K3 = 0
            elif case_name == "II":
                ab0 = mul[a0 * q + b0]
                ab1 = mul[a0 * q + b1] ^ mul[a1 * q + b0]
                ab2 = mul[a1 * q + b1]
                s0, s1 = a0 ^ b0, a1 ^ b1
                K0 = mul[ab0 * q + s0]
                K1 = mul[ab0 * q + s1] ^ mul[ab1 * q + s0]
                K2 = mul[ab1 * q + s1] ^ mul[ab2 * q + s0]
                K3 = mul[ab2 * q + s1]
            elif case_name == "III":
                K0 = mul[as0 * q + b0]
                K1 = mul[as0 * q + b1]
                K2 = mul[as2 * q + b0]
                K3 = mul[as2 * q + b1]
            else:  # IV: K = a^3
                K0 = mul[as0 * q + a0]
                K1 = mul[as0 * q + a1]
                K2 = mul[as2 * q + a0]
                K3 = mul[as2 * q + a1]
            c2_free = a_deg1 or b1 != 0
            if P:
                for ic, (c0, c1, c2, c3) in enumerate(quads):
                    if (
                        mul[c0 * q + P] != K0
                        or mul[c1 * q + P] != K1
                        or mul[c2 * q + P] != K2
                        or mul[c3 * q + P] != K3
                    ):
                        continue
                    if _full_check(
                        alpha_sq, beta_sq, a0, a1, b0, b1, c0, c1, c2, c3,
                        as0, as2, c2_free, q, mul, inv,
                    ):
                        out.append((ia, ib, ic))
            else:
                if K0 or K1 or K2 or K3:
                    continue
                for ic, (c0, c1, c2, c3) in enumerate(quads):
                    if ia == 0 and ib == 0 and ic == 0:
                        continue
                    if _full_check(
                        alpha_sq, beta_sq, a0, a1, b0, b1, c0, c1, c2, c3,
                        as0, as2, c2_free, q, mul, inv,
                    ):
                        out.append((ia, ib, ic))
    return out


def _full_check(alpha_sq, beta_sq, a0, a1, b0, b1, c0, c1, c2, c3, as0, as2, c2_free, q, mul, inv):
    """C2, the remaining two minors, and C1 for a triple that passed minor 1."""
    if not (c2_free or c3):
        return False
    # A = c*a' (+ a^2 per case), B = c*b' (+ squares per case), C = c*c'
    A = [mul[c0 * q + a1], mul[c1 * q + a1], mul[c2 * q + a1], mul[c3 * q + a1]]
    B = [mul[c0 * q + b1], mul[c1 * q + b1], mul[c2 * q + b1], mul[c3 * q + b1]]
    bs0 = mul[b0 * q + b0]
    bs2 = mul[b1 * q + b1]
    if alpha_sq == "alpha":
        A[0] ^= as0
        A[2] ^= as2
    elif alpha_sq == "beta":
        B[0] ^= as0
        B[2] ^= as2
    if beta_sq == "alpha":
        A[0] ^= bs0
        A[2] ^= bs2
    elif beta_sq == "beta":
        B[0] ^= bs0
        B[2] ^= bs2
    # C = c*c' with c' = c1 + c3*t^2; the t^3 coefficient c1*c3 + c3*c1 vanishes
    C0 = mul[c0 * q + c1]
    C1 = mul[c1 * q + c1]
    C2 = mul[c2 * q + c1] ^ mul[c0 * q + c3]
    C4 = mul[c2 * q + c3]
    C5 = mul[c3 * q + c3]
    # minor 2: A*c + C*a = 0  (degrees up to 6)
    if (
        mul[A[0] * q + c0] ^ mul[C0 * q + a0]
        or mul[A[0] * q + c1] ^ mul[A[1] * q + c0] ^ mul[C0 * q + a1] ^ mul[C1 * q + a0]
        or mul[A[0] * q + c2] ^ mul[A[1] * q + c1] ^ mul[A[2] * q + c0] ^ mul[C1 * q + a1] ^ mul[C2 * q + a0]
        or mul[A[0] * q + c3] ^ mul[A[1] * q + c2] ^ mul[A[2] * q + c1] ^ mul[A[3] * q + c0] ^ mul[C2 * q + a1]
        or mul[A[1] * q + c3] ^ mul[A[2] * q + c2] ^ mul[A[3] * q + c1] ^ mul[C4 * q + a0]
        or mul[A[2] * q + c3] ^ mul[A[3] * q + c2] ^ mul[C4 * q + a1] ^ mul[C5 * q + a0]
        or mul[A[3] * q + c3] ^ mul[C5 * q + a1]
    ):
        return False
    # minor 3: B*c + C*b = 0
    if (
        mul[B[0] * q + c0] ^ mul[C0 * q + b0]
        or mul[B[0] * q + c1] ^ mul[B[1] * q + c0] ^ mul[C0 * q + b1] ^ mul[C1 * q + b0]
        or mul[B[0] * q + c2] ^ mul[B[1] * q + c1] ^ mul[B[2] * q + c0] ^ mul[C1 * q + b1] ^ mul[C2 * q + b0]
        or mul[B[0] * q + c3] ^ mul[B[1] * q + c2] ^ mul[B[2] * q + c1] ^ mul[B[3] * q + c0] ^ mul[C2 * q + b1]
        or mul[B[1] * q + c3] ^ mul[B[2] * q + c2] ^ mul[B[3] * q + c1] ^ mul[C4 * q + b0]
        or mul[B[2] * q + c3] ^ mul[B[3] * q + c2] ^ mul[C4 * q + b1] ^ mul[C5 * q + b0]
        or mul[B[3] * q + c3] ^ mul[C5 * q + b1]
    ):
        return False
    return _packed_gcd_is_unit(([a0, a1], [b0, b1], [c0, c1, c2, c3]), q, mul, inv)


def _scan(spec, case, jobs=1):
    """All valid packed triples of the case, in lexicographic order."""
    field_key = (spec.p, spec.k, spec.modulus)
    q = spec.order
    blocks = [(field_key, case.name, ia, ia + 1) for ia in range(q * q)]
    if jobs and jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_scan_block, blocks, chunksize=max(1, len(blocks) // (4 * jobs)))
    else:
        results = [_scan_block(b) for b in blocks]
    out = []
    for r in results:
        out.extend(r)
    return out


def _scale_packed(packed, lam, spec, mul):
    q = spec.order
    ia, ib, ic = packed

    def scale_idx(idx, width):
        out = 0
        shift = 1
        for _ in range(width):
            out += mul[(idx % q) * q + lam] * shift
            idx //= q
            shift *= q
        return out

    return (scale_idx(ia, 2), scale_idx(ib, 2), scale_idx(ic, 4))


def _canonical_rep(packed, spec, mul):
    best = packed
    for lam in range(2, spec.order):
        cand = _scale_packed(packed, lam, spec, mul)
        if cand < best:
            best = cand
    return best


def _packed_to_triple(packed, spec, case):
    ia, ib, ic = packed
    return DerivationTriple(
        case,
        _poly_from_index(spec, ia, 1),
        _poly_from_index(spec, ib, 1),
        _poly_from_index(spec, ic, 3),
    )


def find_valid(spec, case, jobs=1):
    """Lexicographically least representatives of the valid scalar classes."""
    _, _add, mul, _inv = spec.tables()
    valid = _scan(spec, case, jobs=jobs)
    reps = sorted({_canonical_rep(pk, spec, mul) for pk in valid})
    return [_packed_to_triple(pk, spec, case) for pk in reps]


# ---------------------------------------------------------------------------
# family instance iteration and reports
# ---------------------------------------------------------------------------


def iter_family_instances(spec, family):
    """All (params, triple) pairs over constraint-satisfying base-field values."""
    elements = spec.elements()
    nonzero = [x for x in elements if x]
    f = FamilyId
    domains = {
        f.I_A: lambda: (
            {"s": s, "t1": t1, "t2": t2}
            for s in elements
            for t1 in elements
            for t2 in elements
            if s * t1 != t2
        ),
        f.II_I: lambda: ({"t1": t1, "t2": t2} for t1 in elements for t2 in elements if t1 != t2),
        f.II_IV: lambda: (
            {"t0": t0, "t1": t1, "t2": t2}
            for t0 in elements
            for t1 in elements
            for t2 in elements
            if t0 != t1 and t0 != t2 and t1 != t2
        ),
        f.III_I: lambda: ({"s": s, "t1": t1} for s in nonzero for t1 in elements),
        f.III_III: lambda: (
            {"s": s, "t1": t1, "t2": t2}
            for s in nonzero
            for t1 in elements
            for t2 in elements
            if t1 != t2
        ),
        f.IV_I: lambda: ({"s1": s1, "t2": t2} for s1 in nonzero for t2 in elements),
        f.IV_III: lambda: (
            {"s1": s1, "s2": s2, "r2": r2} for s1 in nonzero for s2 in nonzero for r2 in nonzero
        ),
        f.IV_IV: lambda: (
            {"s1": s1, "s2": s2, "t1": t1, "t2": t2}
            for s1 in nonzero
            for s2 in nonzero
            for t1 in elements
            for t2 in elements
            if t1 != t2
        ),
    }
    domains[f.I_B] = domains[f.I_A]
    domains[f.II_II] = domains[f.II_I]
    domains[f.II_III] = domains[f.II_I]
    domains[f.III_II] = domains[f.III_I]
    domains[f.IV_II] = domains[f.IV_I]
    for params in domains[family]():
        yield params, instantiate(family, params, spec)


@dataclass
class SoundnessReport:
    field: str
    case: str
    instances: dict = field(default_factory=dict)  # family tag -> instance count
    failures: list = field(default_factory=list)  # [{family, params, triple}]

    @property
    def passed(self):
        return not self.failures

    def to_json_dict(self):
        return {
            "field": self.field,
            "case": self.case,
            "instances": dict(self.instances),
            "failures": list(self.failures),
            "passed": self.passed,
        }


def verify_soundness(spec, case):
    """Instantiate every family of the case over all base-field parameters
    and check admissibility; failures are returned as data, never raised."""
    try:
        spec.tables()  # table-backed element arithmetic for the instance sweep
    except ValueError:
        pass
    report = SoundnessReport(field=spec.literal(), case=case.name)
    for family in families_of_case(case):
        count = 0
        for params, triple in iter_family_instances(spec, family):
            count += 1
            if not is_valid_foliation(triple):
                report.failures.append(
                    {
                        "family": family.value,
                        "params": {k: str(v) for k, v in params.items()},
                        "triple": triple.to_json_dict(),
                    }
                )
        report.instances[family.value] = count
    return report


@dataclass
class EnumerationReport:
    field: str
    case: str
    total_triples: int
    valid_count: int
    scalar_classes: int
    matched: int
    unmatched: list
    overlaps: list
    ext_degree_histogram: dict
    runtime_seconds: float
    class_matches: list = field(default_factory=list)  # [(triple, [FamilyMatch...])]

    @property
    def complete(self):
        return not self.unmatched

    def to_json_dict(self, with_timing=True):
        out = {
            "field": self.field,
            "case": self.case,
            "total_triples": self.total_triples,
            "valid_count": self.valid_count,
            "scalar_classes": self.scalar_classes,
            "matched": self.matched,
            "unmatched": list(self.unmatched),
            "overlaps": list(self.overlaps),
            "ext_degree_histogram": {str(k): v for k, v in sorted(self.ext_degree_histogram.items())},
            "complete": self.complete,
        }
        if with_timing:
            out["runtime_seconds"] = self.runtime_seconds
        return out


def verify_completeness(spec, case, max_ext=6, jobs=1):
    """Classify every valid scalar class; unmatched classes are report data."""
    start = time.monotonic()
    _, _add, mul, _inv = spec.tables()
    valid = _scan(spec, case, jobs=jobs)
    reps_packed = sorted({_canonical_rep(pk, spec, mul) for pk in valid})
    q = spec.order
    if len(valid) != len(reps_packed) * (q - 1):
        raise ConsistencyError(
            f"scalar orbits do not partition the valid set: {len(valid)} valid, "
            f"{len(reps_packed)} classes over {spec.literal()}"
        )
    unmatched = []
    overlaps = []
    histogram: dict = {}
    matched = 0
    class_matches = []
    for pk in reps_packed:
        triple = _packed_to_triple(pk, spec, case)
        matches = classify(triple, max_ext=max_ext)
        class_matches.append((triple, matches))
        if matches:
            matched += 1
            for m in matches:
                histogram[m.ext_degree] = histogram.get(m.ext_degree, 0) + 1
            families = sorted({m.family.value for m in matches})
            if len(families) > 1:
                overlaps.append({"triple": triple.to_json_dict(), "families": families})
        else:
            unmatched.append(triple.to_json_dict())
    if matched + len(unmatched) != len(reps_packed):
        raise ConsistencyError("matched and unmatched classes do not partition the class set")
    return EnumerationReport(
        field=spec.literal(),
        case=case.name,
        total_triples=total_triple_count(spec),
        valid_count=len(valid),
        scalar_classes=len(reps_packed),
        matched=matched,
        unmatched=unmatched,
        overlaps=overlaps,
        ext_degree_histogram=histogram,
        runtime_seconds=time.monotonic() - start,
        class_matches=class_matches,
    )


def case_c_corollaries(spec, case, jobs=1, reps=None):
    """Observed c-vanishing pattern over the valid set of a case.

    Returns (all_c_zero, all_c_nonzero) across scalar-class representatives;
    scaling never changes whether c vanishes, so classes suffice.
    """
    if reps is None:
        reps = find_valid(spec, case, jobs=jobs)
    all_zero = all(not r.c for r in reps)
    all_nonzero = all(bool(r.c) for r in reps)
    return all_zero, all_nonzero
