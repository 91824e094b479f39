"""Command line front end.

Every command prints a short human summary, or with ``--json`` a report
object. Exit status is 0 when all checks pass, 1 when a check fails and 2
for usage, parse and input errors.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .complement import (
    complement_bounds,
    naimark_complement,
    unitary_equivalence,
    verify_complement,
    verify_pair,
)
from .completion import complete_to_tight
from .errors import NaimarkError, ScalingDegenerate
from .frames import classify, frame_operator, gram, spectral
from .fusion import (
    chordal_distance_squared,
    fusion_naimark,
    fusion_unitary_equivalence,
    pairwise_cosines,
    predicted_complement_angles,
    principal_angles,
    chordal_complement_check,
)
from .instances import case_rngs, random_bessel
from .io import (
    file_digest,
    is_fusion_file,
    matrix_to_object,
    parse_fusion,
    parse_matrix,
    serialize_report,
    to_jsonable,
    write_fusion,
    write_matrix,
)
from .numkernel import COMPLEX, REAL, max_abs
from .properties import cross_gram_residual, rip_complement_check, rip_constant

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PRNG_NOTE = "numpy PCG64; case i seeded by SeedSequence(seed).spawn(cases)[i]"


class Report:
    def __init__(self, operation, inputs=None, seed=None):
        self.operation = operation
        self.inputs = {name: file_digest(path) for name, path in (inputs or {}).items()}
        self.seed = seed
        self.checks = []
        self.values = {}
        self.artifacts = {}

    def check(self, name, residual, tolerance):
        residual = float(residual)
        self.checks.append(
            {"name": name, "passed": bool(residual <= tolerance), "residual": residual, "tolerance": float(tolerance)}
        )

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def as_dict(self):
        return {
            "tool": "naimark",
            "version": __version__,
            "operation": self.operation,
            "inputs": self.inputs,
            "seed": self.seed,
            "passed": self.passed,
            "checks": self.checks,
            "values": to_jsonable(self.values),
            "artifacts": to_jsonable(self.artifacts),
        }

    def human(self):
        lines = [f"{self.operation}: {'PASS' if self.passed else 'FAIL'}"]
        for k, v in self.values.items():
            lines.append(f"  {k} = {_fmt(v)}")
        for k, v in self.artifacts.items():
            lines.append(f"  {k}: {_fmt(v)}")
        for c in self.checks:
            flag = "ok  " if c["passed"] else "FAIL"
            lines.append(f"  [{flag}] {c['name']}: residual {c['residual']:.3e} (tol {c['tolerance']:.1e})")
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, np.ndarray) and v.ndim == 2:
        return np.array2string(v, precision=6, suppress_small=True).replace("\n", "\n    ")
    if isinstance(v, (list, tuple, np.ndarray)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.10g}"
    return str(v)


def _emit_matrix(report, name, mat, out):
    if out:
        write_matrix(out, mat)
        report.artifacts[name] = {"path": out}
    else:
        report.artifacts[name] = mat


def cmd_analyze(a):
    f = parse_matrix(a.F)
    r = Report("analyze", {"F": a.F})
    spec = spectral(f, a.tol)
    c = classify(f, a.tol)
    r.values.update(
        M=f.shape[0], N=f.shape[1], field=COMPLEX if np.iscomplexobj(f) else REAL,
        eigenvalues=spec.eigenvalues, B=spec.B, A=spec.A, K=spec.K,
        is_frame=c.is_frame, is_tight=c.is_tight, is_parseval=c.is_parseval,
        is_equal_norm=c.is_equal_norm, is_equiangular=c.is_equiangular,
    )
    if c.common_norm is not None:
        r.values["common_norm"] = c.common_norm
    if c.common_angle is not None:
        r.values["common_angle"] = c.common_angle
    return r


def cmd_complete(a):
    f = parse_matrix(a.F)
    r = Report("complete", {"F": a.F})
    res = complete_to_tight(f, pad=a.pad)
    t = res.target_bound
    fh = np.hstack([f, res.H])
    r.values.update(target_bound=t, added=res.H.shape[1])
    r.check("tightness", max_abs(frame_operator(fh) - t * np.eye(f.shape[0])), a.tol * t)
    _emit_matrix(r, "H", res.H, a.out)
    return r


def cmd_complement(a):
    f = parse_matrix(a.F)
    r = Report("complement", {"F": a.F})
    res = naimark_complement(f, pad=a.pad)
    b = complement_bounds(spectral(f), f.shape[1], a.pad)
    r.values.update(B=res.B, K=res.K, target_bound=res.target_bound, rows=res.G.shape[0],
                    embedding_dim=res.embedding_dim, complement_is_empty=b.complement_is_empty)
    if not b.complement_is_empty:
        r.values.update(lower_bound=b.lower, upper_bound=b.upper)
    _emit_matrix(r, "G", res.G, a.out)
    if a.verify:
        for c in verify_complement(f, res, a.tol).checks:
            r.check(c.name, c.residual, c.tolerance)
    return r


def cmd_verify(a):
    f, g = parse_matrix(a.F), parse_matrix(a.G)
    r = Report("verify", {"F": a.F, "G": a.G})
    rep = verify_pair(f, g, a.pad, a.tol)
    r.values["bound"] = spectral(f).B if a.pad is None else a.pad
    for c in rep.checks:
        r.check(c.name, c.residual, c.tolerance)
    return r


def cmd_bounds(a):
    f = parse_matrix(a.F)
    r = Report("bounds", {"F": a.F})
    spec = spectral(f)
    b = complement_bounds(spec, f.shape[1], a.pad)
    r.values["complement_is_empty"] = b.complement_is_empty
    if b.complement_is_empty:
        return r
    g = naimark_complement(f, pad=a.pad, spec=spec).G
    sv = np.linalg.svd(g, compute_uv=False) ** 2
    t = spec.B if a.pad is None else a.pad
    nz = sv[sv > 1e-8 * t]
    r.values.update(lower=b.lower, upper=b.upper, measured_lower=nz.min(), measured_upper=nz.max())
    r.check("lower_bound", abs(b.lower - nz.min()), a.tol * t)
    r.check("upper_bound", abs(b.upper - nz.max()), a.tol * t)
    return r


def cmd_rip(a):
    f = parse_matrix(a.F)
    r = Report("rip", {"F": a.F})
    rep = rip_constant(f, a.L)
    r.values.update(L=rep.L, delta=rep.delta, witness=rep.witness_subset, subsets=rep.subset_count)
    try:
        t = rip_complement_check(f, a.L, a.tol)
    except ScalingDegenerate as exc:
        r.values["transfer"] = f"skipped: {exc}"
        return r
    r.values.update(B=t.B, delta_complement=t.delta_complement, transfer_bound=t.bound,
                    proof_display_bound=t.proof_display_bound)
    r.check("rip_transfer", max(t.delta_complement - t.bound, 0.0), a.tol)
    return r


def cmd_fusion_complement(a):
    ff = parse_fusion(a.FF)
    r = Report("fusion-complement", {"FF": a.FF})
    fc = fusion_naimark(ff)
    r.values.update(B=fc.B, blocks=len(fc.frame), ambient_dim=fc.frame.ambient_dim,
                    weights=fc.frame.weights, dropped=fc.dropped)
    g = fc.naimark.G
    start, norm_res, orth_res = 0, 0.0, 0.0
    for q, w in zip(ff.bases, ff.weights):
        d = q.shape[1]
        gk = g[:, start:start + d]
        start += d
        gg = gram(gk)
        norm_res = max(norm_res, max_abs(np.real(np.diag(gg)) - (fc.B - w**2)))
        orth_res = max(orth_res, max_abs(gg - np.diag(np.diag(gg))))
    r.check("block_norms", norm_res, a.tol * fc.B)
    r.check("block_orthogonality", orth_res, a.tol * fc.B)
    if a.out:
        write_fusion(a.out, fc.frame)
        r.artifacts["fusion"] = {"path": a.out}
    return r


def cmd_angles(a):
    q1, q2 = parse_matrix(a.Q1), parse_matrix(a.Q2)
    r = Report("angles", {"Q1": a.Q1, "Q2": a.Q2})
    pa = principal_angles(q1, q2)
    r.values.update(angles=pa.angles, cosines=pa.cosines)
    return r


def cmd_chordal(a):
    q1, q2 = parse_matrix(a.Q1), parse_matrix(a.Q2)
    r = Report("chordal", {"Q1": a.Q1, "Q2": a.Q2})
    via_angles, via_trace = chordal_distance_squared(q1, q2)
    r.values.update(distance=float(np.sqrt(max(via_trace, 0.0))), squared_via_angles=via_angles,
                    squared_via_trace=via_trace)
    r.check("angle_trace_agreement", abs(via_angles - via_trace), 1e-10)
    return r


def cmd_fusion_check(a):
    ff = parse_fusion(a.FF)
    r = Report("fusion-check", {"FF": a.FF})
    fc = fusion_naimark(ff)
    b = fc.B
    angle_res, chordal_res, pairs, chordal_pairs = 0.0, 0.0, 0, 0
    for (i, j), cos in pairwise_cosines(ff).items():
        ci, cj = fc.block_map[i], fc.block_map[j]
        if ci is None or cj is None:
            continue
        pairs += 1
        measured = principal_angles(fc.frame.bases[ci], fc.frame.bases[cj]).cosines
        predicted = predicted_complement_angles(principal_angles(ff.bases[i], ff.bases[j]),
                                                ff.weights[i], ff.weights[j], b).cosines
        angle_res = max(angle_res, max_abs(measured - predicted))
        if ff.dims[i] == ff.dims[j]:
            chordal_pairs += 1
            rep = chordal_complement_check(ff, i, j, a.tol, complement=fc)
            chordal_res = max(chordal_res, rep.residual)
    r.values.update(B=b, pairs=pairs, chordal_pairs=chordal_pairs, dropped=fc.dropped)
    r.check("angle_transfer", angle_res, a.tol)
    r.check("chordal_identity", chordal_res, a.tol)
    return r


def cmd_equivalence(a):
    r = Report("equivalence", {"A": a.A, "B": a.B})
    if is_fusion_file(a.A) and is_fusion_file(a.B):
        res = fusion_unitary_equivalence(parse_fusion(a.A), parse_fusion(a.B), tol=a.tol)
        r.values.update(kind="fusion", equivalent=res.equivalent, iterations=res.iterations)
        r.check("projection_alignment", res.residual, a.tol)
        return r
    g1, g2 = parse_matrix(a.A), parse_matrix(a.B)
    res = unitary_equivalence(g1, g2, a.tol)
    scale = max(max_abs(gram(g1)), max_abs(gram(g2)), 1.0)
    r.values.update(kind="vectors", equivalent=res.equivalent)
    r.check("gram_agreement", res.gram_residual, a.tol * scale)
    if res.unitary is not None:
        r.artifacts["U"] = res.unitary
        r.check("unitary_alignment", res.alignment_residual, a.tol * np.sqrt(scale))
    return r


def cmd_selftest(a):
    r = Report("selftest", seed=a.seed)
    worst = {"gram_identity": 0.0, "embedding_unitarity": 0.0, "cross_gram": 0.0, "bounds": 0.0}
    for rng in case_rngs(a.seed, a.cases):
        field = COMPLEX if rng.random() < 0.5 else REAL
        m, n = int(rng.integers(1, 9)), int(rng.integers(1, 13))
        f = random_bessel(rng, m, n, field)
        spec = spectral(f)
        res = naimark_complement(f, spec=spec)
        rep = verify_complement(f, res, a.tol)
        worst["gram_identity"] = max(worst["gram_identity"], rep.residual("gram_identity") / spec.B)
        worst["embedding_unitarity"] = max(worst["embedding_unitarity"], rep.residual("embedding_unitarity") / spec.B)
        worst["cross_gram"] = max(worst["cross_gram"], cross_gram_residual(f, res.G) / spec.B)
        b = complement_bounds(spec, n)
        if not b.complement_is_empty:
            ev = np.linalg.svd(res.G, compute_uv=False) ** 2
            ev = ev[ev > 1e-8 * spec.B]
            worst["bounds"] = max(worst["bounds"], abs(ev.min() - b.lower) / spec.B, abs(ev.max() - b.upper) / spec.B)
    r.values.update(cases=a.cases, prng=PRNG_NOTE)
    for name, v in worst.items():
        r.check(name, v, a.tol)
    return r


def build_parser():
    p = argparse.ArgumentParser(prog="naimark", description="Naimark complements of frames and fusion frames.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, pad=False, out=False):
        s = sub.add_parser(name)
        for pos in positional:
            s.add_argument(pos)
        s.add_argument("--tol", type=float, default=1e-9)
        s.add_argument("--json", action="store_true", help="print a JSON report")
        if pad:
            s.add_argument("--pad", type=float, default=None, metavar="C", help="complete to a C-tight frame (C > B)")
        if out:
            s.add_argument("--out", default=None, help="write the produced matrix to this file")
        s.set_defaults(func=fn)
        return s

    add("analyze", cmd_analyze, "F")
    add("complete", cmd_complete, "F", pad=True, out=True)
    c = add("complement", cmd_complement, "F", pad=True, out=True)
    c.add_argument("--verify", action="store_true")
    add("verify", cmd_verify, "F", "G", pad=True)
    add("bounds", cmd_bounds, "F", pad=True)
    rip = add("rip", cmd_rip, "F")
    rip.add_argument("--L", type=int, required=True)
    add("fusion-complement", cmd_fusion_complement, "FF", out=True)
    add("angles", cmd_angles, "Q1", "Q2")
    add("chordal", cmd_chordal, "Q1", "Q2")
    add("fusion-check", cmd_fusion_check, "FF")
    add("equivalence", cmd_equivalence, "A", "B")
    st = add("selftest", cmd_selftest)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--cases", type=int, default=100)
    return p


def run_command(argv, stdout=None, stderr=None):
    """Run one command; return ``(exit_code, report_dict_or_None)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), None
    try:
        report = args.func(args)
    except (NaimarkError, OSError) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE, None
    data = report.as_dict()
    stdout.write(serialize_report(data) if args.json else report.human())
    return (EXIT_OK if report.passed else EXIT_FAIL), data


def main(argv=None):
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    sys.exit(code)


if __name__ == "__main__":
    main()
