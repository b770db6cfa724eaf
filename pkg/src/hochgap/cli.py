"""Command-line front end.

    hochgap hh --algebra zsqrt2 --max-degree 5
    hochgap smooth-check --algebra qx_poly --direction both --format json
    hochgap closed --algebra campillo --p 2 --cutoff 2

``--algebra`` takes a presentation file or the name of a bundled corpus
entry.  Exit codes: 0 success or certified, 1 error, 2 criterion not met or
inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

from hochgap.complexes import DEFAULT_TOP
from hochgap.errors import HochgapError
from hochgap.modules import ModulePresentation, parse_module
from hochgap.presentation import AlgebraPresentation, load_presentation, tomllib

CORPUS_DIR = Path(__file__).parent / "corpus"
GOLDEN_DIR = CORPUS_DIR / "golden"
SUBCOMMANDS = ("resolve", "hh", "hcoh", "deviations", "closed", "smooth-check", "oracle", "corpus")

EXIT_OK, EXIT_ERROR, EXIT_NOT_CERTIFIED = 0, 1, 2


@dataclass
class JobSpec:
    subcommand: str
    algebra: Optional[str] = None
    module: str = "S"
    cutoff: int = DEFAULT_TOP
    strategy: str = "auto"
    fmt: str = "text"
    kind: str = "minimal"
    p: int = 2
    direction: str = "both"
    interval_override: Optional[int] = None
    top: int = DEFAULT_TOP
    golden: Optional[str] = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.cutoff < 0:
            raise ValueError("cutoff must be nonnegative")


@dataclass
class Report:
    job: dict
    results: dict
    caveats: List[str] = field(default_factory=list)
    text: str = ""
    exit_code: int = EXIT_OK
    timing: float = 0.0

    def to_json(self) -> str:
        # timing is left out so that output is reproducible byte for byte
        rec = {"job": self.job, "results": self.results, "caveats": self.caveats,
               "exit_code": self.exit_code}
        return json.dumps(rec, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

def resolve_algebra_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    bundled = CORPUS_DIR / f"{name}.toml"
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"no presentation file or corpus entry named {name!r}")


def load_algebra(name: str) -> AlgebraPresentation:
    return load_presentation(resolve_algebra_path(name))


def load_module(spec: str, pres: AlgebraPresentation) -> Optional[ModulePresentation]:
    if spec in ("S", "", None):
        return None
    return parse_module(Path(spec).read_text(), pres)


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

def _index() -> dict:
    return tomllib.loads((CORPUS_DIR / "index.toml").read_text())


def corpus_list() -> List[dict]:
    """Bundled presentation files with their expectations and the digest of
    their golden output."""
    out = []
    for name, entry in sorted(_index()["entries"].items()):
        rec = dict(entry)
        rec["name"] = name
        rec["path"] = str(CORPUS_DIR / f"{name}.toml")
        out.append(rec)
    return out


def golden_record(name: str) -> dict:
    """The structured results frozen in the golden file of a corpus entry."""
    from hochgap.criteria import smooth_check
    from hochgap.hochschild import hochschild_cohomology, hochschild_homology
    from hochgap.resolutions import (Surjection, deviations, is_p_closed,
                                     minimal_free_resolution)
    pres = load_algebra(name)
    if "kernel" in pres.meta:
        phi = Surjection.from_presentation(pres)
        dv = deviations(phi)
        F = minimal_free_resolution(pres, ModulePresentation.cyclic(pres, phi.kernel), 4)
        return {
            "algebra": pres.to_text(),
            "deviations": [dv.eps2, dv.eps3],
            "closed": {"1": is_p_closed(phi, 1).to_record(), "2": is_p_closed(phi, 2, 2).to_record()},
            "minimal_resolution_ranks": [F.rank(n) for n in range(5)],
        }
    return {
        "algebra": pres.to_text(),
        "hh": hochschild_homology(pres, None, 5).to_record(),
        "hcoh": hochschild_cohomology(pres, None, 5).to_record(),
        "smooth_check": [v.to_record() for v in smooth_check(pres, "both", 5)],
    }


def golden_text(name: str) -> str:
    return json.dumps(golden_record(name), sort_keys=True, indent=2) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _job_echo(job: JobSpec) -> dict:
    return {k: v for k, v in asdict(job).items() if v is not None and k != "fmt"}


def run(job: JobSpec) -> Report:
    start = time.perf_counter()
    handler = _HANDLERS[job.subcommand]
    report = handler(job)
    report.job = _job_echo(job)
    report.timing = time.perf_counter() - start
    return report


def _run_resolve(job):
    from hochgap.resolutions import (Surjection, koszul_complex, minimal_free_resolution,
                                     tate_stage)
    pres = load_algebra(job.algebra)
    if job.kind in ("koszul", "tate"):
        phi = Surjection.from_presentation(pres)
        if job.kind == "koszul":
            C = koszul_complex(pres, phi.minimal_kernel_generators())
        else:
            C = tate_stage(phi, 2, job.cutoff).complex
    elif job.kind == "minimal":
        if "kernel" in pres.meta:
            module = ModulePresentation.cyclic(pres, [pres.element(k) for k in pres.meta["kernel"]])
        else:
            module = load_module(job.module, pres) or ModulePresentation.cyclic(pres, pres.ring.gens())
        C = minimal_free_resolution(pres, module, job.cutoff)
    else:
        raise ValueError(f"unknown resolution kind {job.kind!r}")
    return Report({}, {"complex": C.to_record()}, list(C.caveats), C.to_text())


def _run_table(job):
    from hochgap.hochschild import bar_oracle, hochschild_cohomology, hochschild_homology
    pres = load_algebra(job.algebra)
    module = load_module(job.module, pres)
    direction = "homology" if job.subcommand == "hh" else "cohomology"
    if job.strategy == "bar":
        dims = bar_oracle(pres, module, job.cutoff, direction)
        rec = {"direction": direction, "strategy": "bar",
               "entries": [{"degree": n, "descriptor": f"k^{d}" if d else "0"} for n, d in enumerate(dims)]}
        text = "\n".join(f"  n={n}: {e['descriptor']}   [bar]" for n, e in enumerate(rec["entries"]))
        return Report({}, {"table": rec}, [], text)
    fn = hochschild_homology if direction == "homology" else hochschild_cohomology
    table = fn(pres, module, job.cutoff, job.strategy, job.top)
    return Report({}, {"table": table.to_record()}, list(table.caveats), table.to_text())


def _run_deviations(job):
    from hochgap.criteria import diagonal_points
    from hochgap.resolutions import Surjection, deviations
    pres = load_algebra(job.algebra)
    if "kernel" in pres.meta:
        dv = deviations(Surjection.from_presentation(pres))
        rec = {"eps2": dv.eps2, "eps3": dv.eps3}
        return Report({}, {"deviations": rec}, list(dv.caveats), f"eps2 = {dv.eps2}, eps3 = {dv.eps3}")
    points = diagonal_points(pres)
    rec = [{"point": p.label, "eps2": p.c, "eps3": p.d} for p in points]
    text = "diagonal S^e -> S\n" + "\n".join(
        f"  at {p.label}: eps2 = {p.c}, eps3 = {p.d}" for p in points)
    caveats = sorted({c for p in points for c in p.caveats})
    return Report({}, {"diagonal_deviations": rec}, caveats, text)


def _run_closed(job):
    from hochgap.resolutions import Surjection, is_p_closed
    pres = load_algebra(job.algebra)
    phi = Surjection.from_presentation(pres)
    cutoff = job.cutoff if job.cutoff != DEFAULT_TOP else 2
    cert = is_p_closed(phi, job.p, cutoff)
    lines = [f"{job.p}-closed: {'true' if cert.closed else 'false'} ({cert.method})"]
    for r in cert.rows:
        lines.append(f"  degree {r['degree']}: rank G = {r['rank_G']}, rank F = {r['rank_F']}, "
                     f"rank k(x)gamma = {r['rank_k_gamma']}, injective = {r['injective']}")
    lines += [f"caveat: {c}" for c in cert.caveats]
    return Report({}, {"certificate": cert.to_record()}, list(cert.caveats), "\n".join(lines))


def _run_smooth(job):
    from hochgap.criteria import combine, smooth_check
    pres = load_algebra(job.algebra)
    module = load_module(job.module, pres)
    verdicts = smooth_check(pres, job.direction, job.cutoff, module, job.strategy,
                            job.interval_override)
    overall = combine(verdicts)
    code = EXIT_OK if overall in ("smooth-certified", "ci-certified") else EXIT_NOT_CERTIFIED
    caveats = sorted({c for v in verdicts for c in v.caveats})
    text = "\n".join(v.to_text() for v in verdicts) + f"\noverall: {overall}"
    return Report({}, {"verdicts": [v.to_record() for v in verdicts], "overall": overall},
                  caveats, text, code)


def _run_oracle(job):
    from hochgap.hochschild import bar_oracle
    pres = load_algebra(job.algebra)
    module = load_module(job.module, pres)
    dirs = ["homology", "cohomology"] if job.direction == "both" else [job.direction]
    res = {d: bar_oracle(pres, module, job.cutoff, d) for d in dirs}
    text = "\n".join(f"{d}: {v}" for d, v in res.items())
    return Report({}, {"bar_dimensions": res}, [], text)


def _run_corpus(job):
    if job.golden:
        text = golden_text(job.golden)
        return Report({}, {"golden": json.loads(text), "digest": digest(text)}, [], text.rstrip())
    entries = corpus_list()
    lines = [f"{e['name']:<18} {e['description']}  [{e['digest'][:12]}]" for e in entries]
    return Report({}, {"entries": entries}, [], "\n".join(lines))


_HANDLERS = {
    "resolve": _run_resolve, "hh": _run_table, "hcoh": _run_table,
    "deviations": _run_deviations, "closed": _run_closed, "smooth-check": _run_smooth,
    "oracle": _run_oracle, "corpus": _run_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hochgap", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, algebra=True):
        if algebra:
            p.add_argument("--algebra", required=True, help="presentation file or corpus name")
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    for name in ("hh", "hcoh"):
        p = sub.add_parser(name, help=f"Hochschild {'homology' if name == 'hh' else 'cohomology'} table")
        common(p)
        p.add_argument("--module", default="S")
        p.add_argument("--max-degree", dest="cutoff", type=int, default=DEFAULT_TOP)
        p.add_argument("--strategy", default="auto",
                       choices=("auto", "periodic", "koszul", "tate", "minimal", "bar"))
        p.add_argument("--top", type=int, default=DEFAULT_TOP,
                       help="largest internal degree reported for graded algebras")
    p = sub.add_parser("resolve", help="Koszul complex, Tate stage or minimal resolution")
    common(p)
    p.add_argument("--kind", choices=("koszul", "tate", "minimal"), default="minimal")
    p.add_argument("--cutoff", type=int, default=DEFAULT_TOP)
    p.add_argument("--module", default="S")
    p = sub.add_parser("deviations", help="eps2 and eps3 of the kernel map or of the diagonal")
    common(p)
    p = sub.add_parser("closed", help="p-closedness certificate")
    common(p)
    p.add_argument("--p", type=int, choices=(1, 2), default=2)
    p.add_argument("--cutoff", type=int, default=DEFAULT_TOP,
                   help="cap on divided-power exponents (default 2)")
    p = sub.add_parser("smooth-check", help="gap criteria for smoothness")
    common(p)
    p.add_argument("--module", default="S")
    p.add_argument("--direction", choices=("homology", "cohomology", "both"), default="both")
    p.add_argument("--max-degree", dest="cutoff", type=int, default=DEFAULT_TOP)
    p.add_argument("--strategy", default="auto", choices=("auto", "periodic", "koszul", "tate", "minimal"))
    p.add_argument("--interval-override", type=int, default=None,
                   help="experimental: report witnesses for shorter intervals (no certification)")
    p = sub.add_parser("oracle", help="bar complex dimensions")
    common(p)
    p.add_argument("--module", default="S")
    p.add_argument("--max-degree", dest="cutoff", type=int, default=4)
    p.add_argument("--direction", choices=("homology", "cohomology", "both"), default="both")
    p = sub.add_parser("corpus", help="list bundled presentations")
    common(p, algebra=False)
    p.add_argument("--golden", default=None, help="recompute the golden record of an entry")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if k in JobSpec.__dataclass_fields__}
    try:
        job = JobSpec(**fields)
        report = run(job)
    except (HochgapError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if job.fmt == "json":
        print(report.to_json())
    else:
        print(report.text)
        for c in report.caveats:
            if f"caveat: {c}" not in report.text:
                print(f"caveat: {c}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
