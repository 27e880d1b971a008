"""Registered verification checks, the suite runner and report formatting.

Every check has a stable id and runs per catalog group.  A check returns a
status (pass, fail or unresolved) and a details string; failures carry the
counterexample found.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import dade, linalg
from . import structure as st
from .coeffring import TruncatedDVR
from .dade import (
    DadeElement,
    character_group,
    configured_generators,
    determinant_one_lift,
    element_of,
    equal,
    is_identity,
    mul,
    order,
    phi_multiplicativity_check,
    reduce_class,
    rings_for,
    section_on_generators,
)
from .errors import ModuleValidationError
from .exhaustive import MAX_DIM, brute_force_summands, summand_invariants
from .heller import omega_power, relative_syzygy
from .pgroup import CATALOG, PGroup, build_group, subgroup_classes
from .rpmod import (
    RPModule,
    change_basis,
    character_of,
    determinant,
    determinant_character,
    direct_sum_all,
    dual,
    permutation_module,
    regular_module,
    sign_character,
    tensor,
    trivial_module,
)

PASS, FAIL, UNRESOLVED = "pass", "fail", "unresolved"
DEFAULT_PRECISION = 16
DEFAULT_SEED = 42
SECTION_ORDER_BOUND = 4
RANDOM_PAIRS = 20


@dataclass
class CheckResult:
    check_id: str
    group: str
    p: int
    n: int
    N: int
    status: str
    details: str
    elapsed_ms: int
    seed: int

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Check:
    check_id: str
    statement: str
    applies: Callable[[PGroup], bool]
    run: Callable[["Context"], tuple[str, str]]


@dataclass(frozen=True)
class Context:
    group: PGroup
    precision: int
    seed: int
    full: bool = False

    @property
    def rings(self):
        return rings_for(self.group, self.precision)


class UnknownCheck(ValueError):
    pass


# ----------------------------------------------------------------------
# helpers


def _is_two_group(g: PGroup) -> bool:
    return g.p == 2


def _generates(g: PGroup, x: int) -> bool:
    return len(g.closure([x])) == g.order


def _fmt(ring, x) -> str:
    e = ring.match_root_of_unity(x)
    if e is None:
        return ring.format_element(x)
    if e == 0:
        return "1"
    if ring.root_order % 2 == 0 and e == ring.root_order // 2:
        return "-1"
    return f"z^{e}"


def _verdict(bad: list[str], good: str) -> tuple[str, str]:
    if bad:
        return FAIL, "; ".join(bad[:5]) + (f" (+{len(bad) - 5} more)" if len(bad) > 5 else "")
    return PASS, good


@lru_cache(maxsize=64)
def _generators(spec: str, precision: int):
    return configured_generators(build_group(spec), precision)


def _gens(ctx: Context):
    return _generators(ctx.group.name, ctx.precision)


@lru_cache(maxsize=64)
def _phi_classes(spec: str, precision: int, seed: int):
    """(generator, k-class, native O-class, Phi O-class) per configured generator."""
    out = []
    for g in _generators(spec, precision):
        phi = determinant_one_lift(g.module, g.lift, seed)
        out.append(
            (
                g,
                g.element(seed),
                element_of(g.lift, seed, check=False, label=g.name),
                element_of(phi, seed, check=False, label=f"Phi({g.name})"),
            )
        )
    return out


def _random_pairs(n: int, count: int, seed: int) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    return [(int(a), int(b)) for a, b in rng.integers(0, n, size=(count, 2))]


# ----------------------------------------------------------------------
# determinant checks


def check_regular_det(ctx: Context) -> tuple[str, str]:
    """det(g, OP) is -1 when g generates P and 1 otherwise."""
    group = ctx.group
    _, o = ctx.rings
    reg = regular_module(o, group)
    bad, seen = [], []
    for x in range(1, group.order):
        want = -1 if _generates(group, x) else 1
        got = determinant(reg, x)
        seen.append(f"det({group.word_str(x)}, OP) = {_fmt(o, got)}")
        if not np.array_equal(got, o.scalar(want)):
            bad.append(f"{seen[-1]}, expected {want}")
    return _verdict(bad, "; ".join(seen))


def check_omega_det_cyclic(ctx: Context) -> tuple[str, str]:
    group = ctx.group
    _, o = ctx.rings
    om = omega_power(o, group, 1)
    bad = []
    gens = [x for x in range(1, group.order) if _generates(group, x)]
    for x in gens:
        got = determinant(om, x)
        if not np.array_equal(got, o.from_ints(np.array(-1))):
            bad.append(f"det({group.word_str(x)}, Omega^1(O)) = {_fmt(o, got)}")
    return _verdict(bad, f"det = -1 for all {len(gens)} generating elements, dim Omega^1 = {om.dim}")


def check_omega_det_noncyclic_elements(ctx: Context) -> tuple[str, str]:
    group = ctx.group
    _, o = ctx.rings
    xs = [x for x in range(group.order) if not _generates(group, x)]
    bad = []
    for m in (-3, -2, -1, 1, 2, 3):
        om = omega_power(o, group, m)
        for x in xs:
            got = determinant(om, x)
            if not np.array_equal(got, o.scalar(1)):
                bad.append(f"det({group.word_str(x)}, Omega^{m}(O)) = {_fmt(o, got)}")
    return _verdict(bad, f"det = 1 on {len(xs)} elements for m = -3..3")


# ----------------------------------------------------------------------
# Phi identifications


def check_phi_sign_twist(ctx: Context) -> tuple[str, str]:
    """Phi of Omega^1 and of Omega^1_{P/Q} (index >= 4) is O^- tensor the native lift."""
    group = ctx.group
    k, o = ctx.rings
    minus = sign_character(o, group).as_module()
    cases = [("Omega^1", omega_power(k, group, 1), omega_power(o, group, 1))]
    for q in subgroup_classes(group):
        if q.index_in_P >= 4 and q.order > 1:
            cases.append((f"Omega^1_P/{q.label}", relative_syzygy(k, group, q), relative_syzygy(o, group, q)))
    bad, notes = [], []
    for name, m, lift in cases:
        phi = determinant_one_lift(m, lift, ctx.seed)
        target = tensor(minus, lift)
        w = st.find_isomorphism(phi, target, ctx.seed)
        if w is None:
            bad.append(f"Phi({name}) is not isomorphic to O^- x lift")
            continue
        ok = all(np.array_equal(o.matmul(w, a), o.matmul(b, w)) for a, b in zip(phi.gens, target.gens))
        if not ok or not linalg.is_invertible(o, w):
            bad.append(f"witness for {name} does not verify")
        notes.append(f"{name}: witness {w.shape[0]}x{w.shape[1]} det {_fmt(o, linalg.det(o, w))}")
    return _verdict(bad, "; ".join(notes))


def _lattice_pool(group: PGroup, o: TruncatedDVR) -> list[tuple[str, RPModule]]:
    pool = [("O", trivial_module(o, group)), ("OP", regular_module(o, group))]
    for q in subgroup_classes(group)[1:-1]:
        pool.append((f"O[P/{q.label}]", permutation_module(o, group, q)))
        pool.append((f"Omega_P/{q.label}", relative_syzygy(o, group, q)))
    pool.append(("Omega^1", omega_power(o, group, 1)))
    pool.append(("Omega^-1", omega_power(o, group, -1)))
    for chi in character_group(group, o).elements:
        if not chi.is_trivial():
            pool.append((f"O_chi({chi.table()})", chi.as_module()))
    return pool


def check_det_identities_and_phi(ctx: Context) -> tuple[str, str]:
    """Dual/tensor determinant identities on random pairs; Phi compatibility."""
    group = ctx.group
    k, o = ctx.rings
    pool = [(n, m) for n, m in _lattice_pool(group, o) if m.dim <= 9]
    bad = []
    pairs = _random_pairs(len(pool), RANDOM_PAIRS, ctx.seed)
    for i, j in pairs:
        (na, a), (nb, b) = pool[i], pool[j]
        da, ab = dual(a), tensor(a, b)
        for x in range(group.order):
            d1, d2 = determinant(a, x), determinant(b, x)
            if not np.array_equal(determinant(da, x), o.inv(d1)):
                bad.append(f"det({group.word_str(x)}, {na}*) != det^-1")
            want = o.mul(o.pow(d1, b.dim), o.pow(d2, a.dim))
            if not np.array_equal(determinant(ab, x), want):
                bad.append(f"det({group.word_str(x)}, {na} x {nb}) mismatch")
    text = f"{len(pairs)} random pairs from {len(pool)} lattices"
    if group.name in ("C4", "C2xC2", "Q8"):
        gens = _gens(ctx)
        for g1 in gens:
            for g2 in gens:
                a, b, c = phi_multiplicativity_check(g1.module, g1.lift, g2.module, g2.lift, ctx.seed)
                for flag, part in zip((a, b, c), ("dual", "tensor", "permutation")):
                    if not flag:
                        bad.append(f"Phi {part} compatibility fails for ({g1.name}, {g2.name})")
        text += f"; Phi multiplicativity on {len(gens) ** 2} generator pairs"
    return _verdict(bad, text)


def check_odd_permutation_and_caps(ctx: Context) -> tuple[str, str]:
    group = ctx.group
    k, o = ctx.rings
    bad = []
    for q in subgroup_classes(group):
        lat = permutation_module(o, group, q)
        if not determinant_character(lat).is_trivial():
            bad.append(f"O[P/{q.label}] has determinant {determinant_character(lat).table()}")
    gens = _gens(ctx)
    count = 0
    for i, g1 in enumerate(gens):
        for g2 in gens[i:]:
            phi1 = determinant_one_lift(g1.module, g1.lift, ctx.seed)
            phi2 = determinant_one_lift(g2.module, g2.lift, ctx.seed)
            lhs, _ = st.cap(tensor(phi1, phi2), ctx.seed, known_capped=True)
            n_mod, _ = st.cap(tensor(g1.module, g2.module), ctx.seed, known_capped=True)
            if n_mod.dim == 1:
                n_lift = trivial_module(o, group)
            else:
                n_lift, _ = st.cap(tensor(g1.lift, g2.lift), ctx.seed, known_capped=True)
            rhs = determinant_one_lift(n_mod, n_lift, ctx.seed)
            count += 1
            if not st.is_isomorphic(lhs, rhs, ctx.seed):
                bad.append(f"cap(Phi({g1.name}) x Phi({g2.name})) is not Phi of the cap (dims {lhs.dim}, {rhs.dim})")
    return _verdict(bad, f"{len(subgroup_classes(group))} permutation lattices, {count} generator pairs")


# ----------------------------------------------------------------------
# orders and sections


def check_quaternion_order_four(ctx: Context) -> tuple[str, str]:
    group = ctx.group
    k, o = ctx.rings
    triv = trivial_module(k, group)
    o2 = st.is_isomorphic(omega_power(k, group, 2), triv, ctx.seed)
    o4 = st.is_isomorphic(omega_power(k, group, 4), triv, ctx.seed)
    gen = _phi_classes(group.name, ctx.precision, ctx.seed)[0]
    ok_k = order(gen[1], 8, ctx.seed)
    ok_o = order(gen[3], 8, ctx.seed)
    details = f"Omega^2 ~ k: {o2}; Omega^4 ~ k: {o4}; order over k {ok_k}; order of Phi over O {ok_o}"
    good = (not o2) and o4 and ok_k == 4 and ok_o == 4
    return (PASS if good else FAIL), details


def check_order_two_search(ctx: Context) -> tuple[str, str]:
    """Look for a class of order 2 among products of relative syzygies; lift it."""
    group = ctx.group
    k, o = ctx.rings
    seed = ctx.seed
    pool = []
    for q in subgroup_classes(group)[:-1]:
        name = "Omega^1" if q.order == 1 else f"Omega_P/{q.label}"
        mk = relative_syzygy(k, group, q)
        if mk.dim == 1:
            continue
        a = element_of(mk, seed, check=False)
        lo = relative_syzygy(o, group, q)
        pool.append((name, a, lo))
        pool.append((name + "^-1", dade.inverse(a), dual(lo)))
    log = []
    candidates = []
    for i in range(len(pool)):
        candidates.append(([i], pool[i][1], pool[i][2]))
        for j in range(i, len(pool)):
            prod = mul(pool[i][1], pool[j][1], seed)
            lift, _ = st.cap(tensor(pool[i][2], pool[j][2]), seed, known_capped=True)
            candidates.append(([i, j], prod, lift))
    for idx, a, lift in candidates:
        name = "*".join(pool[i][0] for i in idx)
        if is_identity(a):
            log.append(f"{name}: identity")
            continue
        sq = mul(a, a, seed)
        if not is_identity(sq):
            log.append(f"{name}: dim {a.dim}, square not trivial")
            continue
        phi = determinant_one_lift(a.cap, lift, seed)
        s = element_of(phi, seed, check=False)
        ok = order(s, 4, seed)
        log.append(f"{name}: dim {a.dim}, order 2; Phi order {ok}")
        if ok == 2:
            return PASS, "; ".join(log)
        return FAIL, "; ".join(log)
    return UNRESOLVED, "no class of order 2 among products of length <= 2: " + "; ".join(log)


def check_section(ctx: Context) -> tuple[str, str]:
    group = ctx.group
    gens = _gens(ctx)
    rep = section_on_generators(group, gens, bound=SECTION_ORDER_BOUND, seed=ctx.seed)
    parts = [f"{e.generator}/{e.check}={e.status} ({e.detail})" for e in rep.entries]
    status = PASS if rep.passed else FAIL
    return status, "; ".join(parts) + f"; note: {rep.limitation}"


def check_reduction_homomorphism(ctx: Context) -> tuple[str, str]:
    seed = ctx.seed
    classes = _phi_classes(ctx.group.name, ctx.precision, seed)
    pool = []
    for g, _, native, phi in classes:
        pool += [native, phi, dade.inverse(native)]
    pairs = _random_pairs(len(pool), RANDOM_PAIRS, seed)
    memo_red = {}

    def red(i):
        if i not in memo_red:
            memo_red[i] = reduce_class(pool[i], seed)
        return memo_red[i]

    bad = []
    done = {}
    for i, j in pairs:
        key = (min(i, j), max(i, j))
        if key not in done:
            left = reduce_class(mul(pool[i], pool[j], seed), seed)
            right = mul(red(i), red(j), seed)
            done[key] = equal(left, right, seed)
        if not done[key]:
            bad.append(f"reduce({pool[i].label} * {pool[j].label}) differs (dims {pool[i].dim}, {pool[j].dim})")
    return _verdict(bad, f"{len(pairs)} random products from a pool of {len(pool)} classes")


def check_kernel_characters(ctx: Context) -> tuple[str, str]:
    group = ctx.group
    k, o = ctx.rings
    seed = ctx.seed
    xg = character_group(group, o)
    bad = []
    if xg.order != group.abelianization_order:
        bad.append(f"|X(P)| = {xg.order}, |P/[P,P]| = {group.abelianization_order}")
    mods = [chi.as_module() for chi in xg.elements]
    for chi, m in zip(xg.elements, mods):
        if not is_identity(reduce_class(DadeElement(m), seed)):
            bad.append(f"O_chi for {chi.table()} does not reduce to the identity")
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if st.is_isomorphic(mods[i], mods[j], seed):
                bad.append(f"characters {i} and {j} give isomorphic lattices")
    # every 1-dimensional lattice acts through p-power roots of unity; enumerate
    # the generator images directly and keep the ones that define a module
    valid = set()
    for exps in itertools.product(range(o.root_order), repeat=len(group.generators)):
        mats = tuple(o.zeta_power(e).reshape(1, 1, -1) for e in exps)
        try:
            RPModule(o, group, mats, size=1).validate()
        except ModuleValidationError:
            continue
        valid.add(tuple(exps))
    if valid != {chi.exponents for chi in xg.elements}:
        bad.append(f"{len(valid)} one-dimensional lattices by enumeration, |X(P)| = {xg.order}")
    found = 0
    for g, _, native, phi in _phi_classes(group.name, ctx.precision, seed):
        if xg.index(determinant_character(g.lift)) is None:
            bad.append(f"det of {g.name} lift is not in X(P)")
        b = mul(native, dade.inverse(phi), seed)
        if not is_identity(reduce_class(b, seed)):
            bad.append(f"[{g.name}]/[Phi] does not reduce to the identity")
            continue
        if b.dim != 1:
            bad.append(f"kernel element from {g.name} has cap of dim {b.dim}")
            continue
        found += 1
        if xg.index(character_of(b.cap)) is None:
            bad.append(f"kernel element from {g.name} is not a character")
    return _verdict(bad, f"|X(P)| = {xg.order} = |P/[P,P]| = number of 1-dim lattices; {found} kernel elements from lifts, all 1-dimensional characters")


def _oracle_modules(group: PGroup, k, seed: int) -> list[tuple[str, RPModule]]:
    blocks = [("k", trivial_module(k, group)), ("kP", regular_module(k, group)), ("W", omega_power(k, group, 1))]
    base = list(blocks)
    for i, (na, a) in enumerate(base):
        for nb, b in base[i:]:
            if a.dim * b.dim <= MAX_DIM and a.dim > 1 and b.dim > 1:
                blocks.append((f"({na}x{nb})", tensor(a, b)))
    out = []

    def extend(start: int, chosen: list[int], dim: int):
        if chosen:
            out.append(chosen[:])
        for i in range(start, len(blocks)):
            if dim + blocks[i][1].dim <= MAX_DIM:
                chosen.append(i)
                extend(i, chosen, dim + blocks[i][1].dim)
                chosen.pop()

    extend(0, [], 0)
    rng = np.random.default_rng(seed)
    mods = []
    for combo in out:
        m = direct_sum_all([blocks[i][1] for i in combo])
        while True:
            b = k.from_ints(rng.integers(0, k.p, size=(m.dim, m.dim)))
            if linalg.is_invertible(k, b):
                break
        mods.append(("+".join(blocks[i][0] for i in combo), change_basis(m, b)))
    return mods


def check_oracle(ctx: Context) -> tuple[str, str]:
    group = ctx.group
    k, _ = ctx.rings
    bad = []
    mods = _oracle_modules(group, k, ctx.seed)
    for name, m in mods:
        dec = st.decompose(m, ctx.seed)
        ours = sorted(
            summand_invariants(block_mod) for _, block_mod in dec.block_modules()
        )
        theirs = brute_force_summands(m)
        if ours != theirs:
            bad.append(f"{name}: decompose {ours} vs exhaustive {theirs}")
    return _verdict(bad, f"{len(mods)} modules of dim <= {MAX_DIM} agree with exhaustive search")


REGISTRY: dict[str, Check] = {
    c.check_id: c
    for c in [
        Check("D1", "det(g, OP) = -1 if <g> = P, else 1", _is_two_group, check_regular_det),
        Check("D2", "det(g, Omega^1(O)) = -1 for a generator g of a cyclic 2-group",
              lambda g: g.p == 2 and g.is_cyclic(), check_omega_det_cyclic),
        Check("D3", "det(g, Omega^m(O)) = 1 when <g> < P, m = -3..3", _is_two_group,
              check_omega_det_noncyclic_elements),
        Check("D4", "Phi(Omega^1_{P/Q}(k)) ~ O^- x Omega^1_{P/Q}(O) for cyclic P, index >= 4",
              lambda g: g.name in ("C4", "C8"), check_phi_sign_twist),
        Check("D5", "determinants of duals and tensor products; Phi is compatible with dual and tensor",
              lambda g: True, check_det_identities_and_phi),
        Check("D6", "odd p: permutation lattices have det 1; cap(Phi x Phi) ~ Phi(cap)",
              lambda g: g.p != 2, check_odd_permutation_and_caps),
        Check("S1", "Q8: [Omega^1(k)] and its Phi-lift have order 4", lambda g: g.name == "Q8",
              check_quaternion_order_four),
        Check("S2", "a class of order 2 lifts to a Phi-class of order 2", lambda g: g.name in ("D8", "Q8"),
              check_order_two_search),
        Check("S3", "Phi-lifts of configured generators reduce correctly and keep orders", lambda g: True,
              check_section),
        Check("T1", "reduction mod p is multiplicative on O-classes", lambda g: True,
              check_reduction_homomorphism),
        Check("K1", "kernel of reduction = one-dimensional lattices, |X(P)| = |P/[P,P]|", lambda g: True,
              check_kernel_characters),
        Check("O1", "decompose agrees with exhaustive search in dim <= 6", lambda g: g.name in ("C2", "C4"),
              check_oracle),
        Check("P1", "every check has the same status at precision N and 2N", lambda g: True, None),  # type: ignore[arg-type]
    ]
}


def resolve_suite(suite: Optional[Iterable[str] | str]) -> list[str]:
    if suite is None or suite in ("all", "full"):
        return list(REGISTRY)
    if isinstance(suite, str):
        suite = [s for s in suite.split(",") if s]
    ids = [s.strip().upper() for s in suite]
    unknown = [s for s in ids if s not in REGISTRY]
    if unknown:
        raise UnknownCheck(f"unknown check id(s): {', '.join(unknown)}")
    return [c for c in REGISTRY if c in ids]


def run_check(check_id: str, group: PGroup, precision: int, seed: int, full: bool = False) -> CheckResult:
    check = REGISTRY[check_id]
    ctx = Context(group, precision, seed, full)
    k, o = ctx.rings
    start = time.perf_counter()
    try:
        status, details = check.run(ctx)
    except Exception as exc:  # a crashing check is reported, not propagated
        status, details = FAIL, f"{type(exc).__name__}: {exc}"
    elapsed = int((time.perf_counter() - start) * 1000)
    return CheckResult(check_id, group.name, group.p, o.n, precision, status, details, elapsed, seed)


def run_suite(
    groups: Sequence[str],
    precision: int = DEFAULT_PRECISION,
    seed: int = DEFAULT_SEED,
    suite: Optional[Iterable[str] | str] = "all",
    full: bool = False,
) -> list[CheckResult]:
    """Run the selected checks on every group where they apply, in registry order."""
    if precision < 4:
        raise ValueError("precision must be at least 4")
    if suite == "full":
        full = True
    ids = resolve_suite(suite)
    parsed = []
    for spec in groups:
        if spec not in CATALOG:
            raise ValueError(f"group {spec!r} is not in the catalog ({', '.join(CATALOG)})")
        parsed.append(build_group(spec))
    results: list[CheckResult] = []
    base = [c for c in ids if c != "P1"]
    for cid in base:
        for group in parsed:
            if REGISTRY[cid].applies(group):
                results.append(run_check(cid, group, precision, seed, full))
    if "P1" in ids:
        for group in parsed:
            results.append(_precision_check(group, [r for r in results if r.group == group.name], precision, seed, full))
    return results


def _precision_check(group: PGroup, base: list[CheckResult], precision: int, seed: int, full: bool) -> CheckResult:
    start = time.perf_counter()
    mismatches, parts = [], []
    for r in base:
        again = run_check(r.check_id, group, 2 * precision, seed, full)
        parts.append(f"{r.check_id} {r.status}/{again.status}")
        if again.status != r.status:
            mismatches.append(f"{r.check_id}: {r.status} at N={precision}, {again.status} at N={2 * precision}")
    if mismatches:
        status, details = FAIL, "; ".join(mismatches)
    else:
        status = PASS
        details = f"N={precision} vs N={2 * precision}: " + (", ".join(parts) if parts else "no checks")
    elapsed = int((time.perf_counter() - start) * 1000)
    _, o = rings_for(group, precision)
    return CheckResult("P1", group.name, group.p, o.n, precision, status, details, elapsed, seed)


# ----------------------------------------------------------------------
# reports


def summary(results: Sequence[CheckResult]) -> str:
    counts = {s: sum(1 for r in results if r.status == s) for s in (PASS, FAIL, UNRESOLVED)}
    return f"passed={counts[PASS]} failed={counts[FAIL]} unresolved={counts[UNRESOLVED]}"


def exit_code(results: Sequence[CheckResult]) -> int:
    return 1 if any(r.status == FAIL for r in results) else 0


def report(results: Sequence[CheckResult], fmt: str = "text") -> str:
    if fmt == "json":
        return "".join(json.dumps(r.as_dict(), sort_keys=False) + "\n" for r in results)
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    header = ("check", "group", "ring", "status", "ms", "details")
    rows = [
        (r.check_id, r.group, f"p={r.p} n={r.n} N={r.N}", r.status, str(r.elapsed_ms), r.details)
        for r in results
    ]
    widths = [max([len(header[i])] + [len(row[i]) for row in rows]) for i in range(5)]
    lines = []
    for row in [header] + rows:
        cells = [row[i].ljust(widths[i]) for i in range(5)]
        lines.append("  ".join(cells) + "  " + row[5])
    lines.append(summary(results))
    return "\n".join(lines) + "\n"
