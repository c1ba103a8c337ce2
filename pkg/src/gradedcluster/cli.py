"""Command-line front door.

Exit codes: 0 success, 2 input error, 3 enumeration limit exceeded,
4 internal invariant violation. Indices on the command line and in seed
files are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__, seedio, zlinalg
from .cluster import (
    GradedSeed,
    InhomogeneousError,
    LaurentViolation,
    SeedError,
    change_of_basis,
    finite_type,
    mutate_seed,
    standard_grading,
)
from .distribution import DegreeDistribution, is_balanced
from .explore import (
    DegreeMismatch,
    EnumerationLimitExceeded,
    Limits,
    distribution,
    enumerate_cached,
    frieze_exactness_check,
    verify_root_bijection,
)
from .frieze import (
    FlipDesync,
    check_descent,
    check_polygon_mesh,
    check_shift_negation,
    check_sigma_sign_flip,
    compare_strip_with_polygon,
    knit_strip,
    label_diagonals,
    polygon_as_strip,
)
from .homog import homogenise, principal_homogenise, quotient_recovers
from .laurent import InexactDivision
from .render import format_degree, render_svg, render_text
from .roots import (
    DynkinType,
    almost_positive_roots,
    bipartite_seed,
    closed_form_distribution,
    published_grading,
    published_kernel_dimension,
    root_distribution,
)

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INTERNAL = 0, 2, 3, 4


class InputError(Exception):
    pass


class InfiniteType(Exception):
    """Enumeration requested for a pattern whose exchange graph is infinite."""


class InvariantViolation(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    type: DynkinType | None = None
    seed_file: Path | None = None
    grading: str | None = None
    limits: Limits = field(default_factory=Limits)
    fmt: str = "text"
    cache_dir: Path | None = None
    workers: int = 1

    def __post_init__(self):
        if (self.type is None) == (self.seed_file is None):
            raise InputError("give exactly one of a Dynkin type or --seed FILE")
        if self.workers < 1:
            raise InputError("--workers must be at least 1")

    def base_seed(self) -> GradedSeed:
        if self.type is not None:
            return bipartite_seed(self.type)
        try:
            return seedio.loads(self.seed_file.read_text())
        except OSError as exc:
            raise InputError(f"cannot read seed file: {exc}") from exc

    @property
    def grading_mode(self) -> str:
        """Types default to their standard grading, seed files to their own G."""
        if self.grading is not None:
            return self.grading
        return "standard" if self.type is not None else "file"

    def graded_seed(self) -> GradedSeed:
        seed = self.base_seed()
        mode = self.grading_mode
        if mode == "standard":
            if self.type is not None:
                return seed
            return GradedSeed(seed.cluster, seed.pattern, standard_grading(seed.pattern))
        if mode == "zero":
            return GradedSeed(seed.cluster, seed.pattern, [[] for _ in range(seed.pattern.rows)])
        if mode == "file":
            return seed
        g = _read_matrix(mode)
        return GradedSeed(seed.cluster, seed.pattern, g)


def parse_limits(text: str | None) -> Limits:
    if not text:
        return Limits()
    values = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        key = key.strip()
        if not sep or key not in ("seeds", "vars"):
            raise InputError(f"bad --limits entry {part!r}; expected seeds=N,vars=M")
        try:
            values[key] = int(val)
        except ValueError as exc:
            raise InputError(f"bad --limits value {val!r}") from exc
    try:
        return Limits(values.get("seeds", Limits.max_seeds), values.get("vars", Limits.max_variables))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from exc


def _read_matrix(source: str) -> list[list[int]]:
    """A JSON integer matrix given inline or as a file path.

    A bare comma list such as ``1,0,-1`` is read as a single column.
    """
    path = Path(source)
    text = path.read_text() if path.is_file() else source
    if not path.is_file() and not text.lstrip().startswith("["):
        return [[x] for x in parse_int_list(text, "grading")]
    try:
        m = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"grading is neither a file nor JSON: {source!r}") from exc
    if not isinstance(m, list) or not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in m):
        raise InputError("grading must be a list of integer rows")
    return m


def _matrix_lines(m: Sequence[Sequence[int]]) -> list[str]:
    if not m or not m[0]:
        return ["  (empty: zero grading only)"]
    width = max(len(str(x)) for row in m for x in row)
    return ["  [" + " ".join(str(x).rjust(width) for x in row) + "]" for row in m]


def _dist_json(dist: DegreeDistribution) -> list[dict[str, Any]]:
    return [{"degree": list(d), "count": c} for d, c in dist.counts.items()]


# ---------------------------------------------------------------- classify

@dataclass
class Claim:
    name: str
    ok: bool
    detail: str


def _aligned(t: DynkinType, std, computed: DegreeDistribution):
    """Published distribution, computed one in the published basis, and how they were aligned."""
    published = closed_form_distribution(t)
    pub_g = published_grading(t)
    d = len(std[0]) if std and std[0] else 0
    if pub_g is not None and d and _is_basis(std, pub_g):
        return published, computed.pushed(change_of_basis(std, pub_g)), "published kernel basis"
    if d == 1:
        flipped = computed.negated()
        return published, flipped if flipped == published else computed, "up to global sign"
    return published, computed, "standard basis"


def _is_basis(std, h) -> bool:
    try:
        m = change_of_basis(std, h)
    except SeedError:
        return False
    return len(m) == len(m[0]) and abs(zlinalg.determinant(m)) == 1


def classify_claims(t: DynkinType, seed: GradedSeed, computed: DegreeDistribution, source: str) -> tuple[list[Claim], list[str]]:
    claims: list[Claim] = []
    warnings: list[str] = []
    std = seed.grading
    d = seed.grading_dim
    want_d = published_kernel_dimension(t)
    claims.append(Claim("kernel-dimension", want_d == d, f"published {want_d}, computed {d}"))

    pub_g = published_grading(t)
    if pub_g is not None:
        bt_g = zlinalg.matmul(zlinalg.transpose(seed.pattern.b), pub_g)
        if not zlinalg.is_zero(bt_g):
            claims.append(Claim("kernel-vectors", False,
                                f"published vectors {[list(r) for r in pub_g]} do not satisfy transpose(B) G = 0"))
        elif not _is_basis(std, pub_g):
            claims.append(Claim("kernel-vectors", False, "published vectors do not span the kernel lattice"))
        else:
            claims.append(Claim("kernel-vectors", True, "published vectors form a basis of the kernel lattice"))

    try:
        published, shown, how = _aligned(t, std, computed)
    except ValueError as exc:
        claims.append(Claim("distribution", False, f"no usable published formula: {exc}"))
        return claims, warnings
    claims.append(Claim("distribution", published == shown,
                        f"published {published.format()}, {source} {shown.format()} ({how})"))
    total = len(almost_positive_roots(t))
    claims.append(Claim("total", published.total == total,
                        f"published counts sum to {published.total}, {t} has {total} cluster variables"))
    if published.total != total:
        warnings += [
            f"WARN SUM-MISMATCH: published counts for {t} sum to {published.total}, not {total}",
            f"  published:  {published.format()}",
            f"  {source + ':':<11} {shown.format()}",
        ]
    claims.append(Claim("balanced", is_balanced(computed), f"{source} distribution is "
                        + ("balanced" if is_balanced(computed) else "not balanced")))
    return claims, warnings


def cmd_classify(cfg: RunConfig, enumerate_: bool) -> tuple[int, str]:
    seed = cfg.graded_seed()
    pattern = seed.pattern
    std = standard_grading(pattern)
    d = len(std[0]) if std and std[0] else 0
    report: dict[str, Any] = {
        "type": str(cfg.type) if cfg.type else None,
        "rows": pattern.rows,
        "mutable": len(pattern.mutable),
        "kernel_dimension": d,
        "standard_grading": [list(r) for r in std],
        "grading": [list(r) for r in seed.grading],
    }
    checks: list[Claim] = []
    dist = None
    source = None
    if enumerate_:
        if cfg.type is None and finite_type(pattern) is False:
            raise InfiniteType("the exchange pattern has infinite cluster type; enumeration cannot close")
        result = enumerate_cached(seed, cfg.limits, cfg.workers, cfg.cache_dir)
        dist = distribution(result)
        source = "enumerated"
        report["variables"] = len(result.mutable_indices())
        report["clusters"] = result.cluster_count
        fe = frieze_exactness_check(result)
        checks.append(Claim("frieze-exactness", fe.ok,
                            f"{fe.details['edges']} exchanges" if fe.ok else "; ".join(fe.failures[:3])))
        if cfg.type is not None:
            rb = verify_root_bijection(result, cfg.type, seed.grading)
            checks.append(Claim("root-bijection", rb.ok, "denominator vectors biject onto positive roots"
                                if rb.ok else "; ".join(rb.failures[:3])))
    elif cfg.type is not None:
        dist = root_distribution(cfg.type, seed.grading)
        source = "roots"
    if dist is not None:
        report["distribution_source"] = source
        report["distribution"] = _dist_json(dist)
        report["balanced"] = is_balanced(dist)

    claims: list[Claim] = []
    warnings: list[str] = []
    if cfg.type is not None and cfg.grading_mode == "standard":
        claims, warnings = classify_claims(cfg.type, seed, dist, source)
    report["checks"] = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]
    report["claims"] = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in claims]
    report["warnings"] = warnings
    status = EXIT_OK if all(c.ok for c in checks) else EXIT_INTERNAL

    if cfg.fmt == "json":
        return status, json.dumps(report, indent=2) + "\n"
    if cfg.fmt == "csv":
        if dist is None:
            raise InputError("csv output needs a distribution: pass --enumerate")
        return status, dist.to_csv()

    lines = []
    if cfg.type is not None:
        lines.append(f"type: {cfg.type}")
    lines.append(f"exchange matrix: {pattern.rows} x {len(pattern.mutable)}")
    lines.append(f"kernel dimension: {d}" + ("  (zero grading only)" if d == 0 else ""))
    lines.append("standard grading:")
    lines += _matrix_lines(std)
    if seed.grading != std:
        lines.append("grading in use:")
        lines += _matrix_lines(seed.grading)
    if enumerate_:
        lines.append(f"enumeration: {report['variables']} cluster variables, {report['clusters']} clusters")
    if dist is not None:
        lines.append(f"distribution ({source}): {dist.format()}")
        lines.append(f"balanced: {'yes' if report['balanced'] else 'no'}")
    if checks:
        lines.append("checks:")
        lines += [f"  {'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}" for c in checks]
    if claims:
        lines.append("published claims:")
        lines += [f"  {'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}" for c in claims]
    lines += warnings
    return status, "\n".join(lines) + "\n"


# ---------------------------------------------------------------- mutate

def cmd_mutate(cfg: RunConfig, sequence: Sequence[int]) -> tuple[int, str]:
    seed = cfg.graded_seed()
    for k in sequence:
        if k - 1 not in seed.pattern.mutable:
            raise InputError(f"index {k} is not a mutable position")
        seed = mutate_seed(seed, k - 1)
    return EXIT_OK, seedio.dumps(seed) + "\n"


# ---------------------------------------------------------------- frieze

def _verdict(rep) -> str:
    return "PASS" if rep.ok else "FAIL"


def cmd_frieze(cfg: RunConfig, slice_: list[int] | None, svg: str | None) -> tuple[int, str]:
    t = cfg.type
    if t is None or t.family != "A":
        raise InputError("frieze needs a type A_n")
    n = t.n
    seed = cfg.graded_seed()
    if slice_ is not None:
        if len(slice_) != n:
            raise InputError(f"--slice needs {n} values, got {len(slice_)}")
        start = [(v,) for v in slice_]
    else:
        start = [tuple(r) for r in seed.grading]
    width = 2 * (n + 3)
    strip = knit_strip(n, start, window=(0, width - 1))
    status = EXIT_OK
    out: dict[str, Any] = {"type": str(t), "slice": [list(v) for v in start]}
    lines = [f"type: {t}", "slice: " + " ".join(format_degree(v) for v in start), ""]

    if slice_ is None:
        assignment = label_diagonals(n, seed)
        poly_mesh = check_polygon_mesh(assignment)
        flip = check_sigma_sign_flip(assignment)
        agree = compare_strip_with_polygon(strip, assignment)
        if not (poly_mesh.ok and agree.ok):
            status = EXIT_INTERNAL
        lines += ["polygon fundamental domain:", render_text(polygon_as_strip(assignment), n)]
        out["polygon"] = {f"{dg.i},{dg.j}": list(v) for dg, v in assignment.values.items()}
        checks = [("polygon-mesh", poly_mesh), ("sign-flip", flip), ("strip-matches-polygon", agree)]
    else:
        flip = check_shift_negation(strip)
        checks = [("sign-flip", flip)]
    descent = check_descent(n, strip)
    lines += [f"knitted strip, columns 0..{width - 1}:", render_text(strip.values, n)]
    for name, rep in checks:
        lines.append(f"{_verdict(rep)} {name}" + (f": {rep.violations[0]}" if rep.violations else ""))
    lines.append(f"descent: {descent.status}")
    if descent.witness:
        (v, a), (w, b) = descent.witness
        lines.append(f"  witness: ({v.p},{v.q}) = {format_degree(a)} but identified ({w.p},{w.q}) = {format_degree(b)}")
    out["strip"] = [[v.p, v.q, list(val)] for v, val in strip.values.items()]
    out["checks"] = {name: rep.ok for name, rep in checks}
    out["descent"] = descent.status
    if descent.witness:
        (v, a), (w, b) = descent.witness
        out["witness"] = [[v.p, v.q, list(a)], [w.p, w.q, list(b)]]
    if svg:
        render_svg(strip.values, n, svg, title=f"{t} strip")
        lines.append(f"svg: {svg}")
    if cfg.fmt == "json":
        return status, json.dumps(out, indent=2) + "\n"
    return status, "\n".join(lines) + "\n"


# ---------------------------------------------------------------- homogenise

def cmd_homogenise(cfg: RunConfig, g_source: str | None, method: str, sign: int, verify: bool) -> tuple[int, str]:
    original = cfg.base_seed()
    pattern = original.pattern
    original = GradedSeed.initial(pattern)
    if method == "lemma":
        if g_source is None:
            raise InputError("the lemma method needs --g")
        hom = homogenise(pattern, _read_matrix(g_source))
        seed = hom.seed
    else:
        g = _read_matrix(g_source) if g_source is not None else [[] for _ in range(pattern.rows)]
        hom = principal_homogenise(pattern, g, sign)
        seed = hom.seed
        if g_source is None:
            seed = GradedSeed.initial(seed.pattern)
    extra: dict[str, Any] = {"method": hom.method, "added": [i + 1 for i in hom.added]}
    status = EXIT_OK
    if verify:
        rep = quotient_recovers(original, hom, cfg.limits)
        extra["verify"] = {"ok": rep.ok, "original": rep.counts[0], "homogenised": rep.counts[1],
                           "missing": rep.missing, "extra": rep.extra}
        if not rep.ok:
            status = EXIT_INTERNAL
    return status, seedio.dumps(seed, extra) + "\n"


# ---------------------------------------------------------------- driver

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("type", nargs="?", help="Dynkin type such as A5, B3, D4, E7")
    common.add_argument("--seed", metavar="FILE", help="seed JSON file instead of a type")
    common.add_argument("--grading", help="standard, zero, file (the seed file's G), or a JSON matrix or path;"
                        " default: standard for types, file for seed files")
    common.add_argument("--limits", metavar="seeds=N,vars=M")
    common.add_argument("--workers", type=int, default=1, metavar="K")
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", metavar="DIR")

    p = argparse.ArgumentParser(prog="gradedcluster", description="Gradings of finite-type cluster algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="kernel, standard grading and degree distribution")
    c.add_argument("--enumerate", action="store_true", help="enumerate the exchange graph")

    m = sub.add_parser("mutate", parents=[common], help="apply a mutation sequence and print the seed")
    m.add_argument("--sequence", required=True, metavar="k1,k2,...")

    f = sub.add_parser("frieze", parents=[common], help="degree frieze on the strip and polygon of type A")
    f.add_argument("--slice", metavar="a,b,c,...")
    f.add_argument("--svg", metavar="PATH")

    h = sub.add_parser("homogenise", aliases=["homogenize"], parents=[common], help="add frozen variables")
    h.add_argument("--g", metavar="JSON|FILE", help="degree matrix, one row per variable")
    h.add_argument("--method", choices=("lemma", "principal"), default="lemma")
    h.add_argument("--sign", choices=("+", "-"), default="+")
    h.add_argument("--verify", action="store_true", help="check the quotient recovers the original algebra")
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Returns (exit status, stdout text, stderr text)."""
    args = build_parser().parse_args(argv)
    try:
        t = DynkinType.parse(args.type) if args.type else None
        cfg = RunConfig(
            command=args.command,
            type=t,
            seed_file=Path(args.seed) if args.seed else None,
            grading=args.grading,
            limits=parse_limits(args.limits),
            fmt=args.fmt,
            cache_dir=Path(args.cache) if args.cache else None,
            workers=args.workers,
        )
        if args.command == "classify":
            status, text = cmd_classify(cfg, args.enumerate)
        elif args.command == "mutate":
            status, text = cmd_mutate(cfg, parse_int_list(args.sequence, "--sequence"))
        elif args.command == "frieze":
            sl = parse_int_list(args.slice, "--slice") if args.slice is not None else None
            status, text = cmd_frieze(cfg, sl, args.svg)
        else:
            status, text = cmd_homogenise(cfg, args.g, args.method, 1 if args.sign == "+" else -1, args.verify)
        return status, text, ""
    except (EnumerationLimitExceeded, InfiniteType) as exc:
        return EXIT_LIMIT, "", f"error: {exc}\n"
    except (DegreeMismatch, FlipDesync, LaurentViolation, InexactDivision, InhomogeneousError,
            InvariantViolation) as exc:
        return EXIT_INTERNAL, "", f"internal invariant violated: {exc}\n"
    except (InputError, SeedError, ValueError) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"


def main(argv: Sequence[str] | None = None) -> int:
    status, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
