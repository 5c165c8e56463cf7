"""Command-line interface.

Exit codes: 0 when every checked property holds (or the operation
succeeded), 1 when a checked property fails, 2 on input errors.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import io
from .axioms import verify
from .cohomology import MAX_LEVEL, cohomology_dim, rigidity_report
from .constructions import direct_sum, graph, graph_is_subalgebra_iff_morphism, is_morphism, yau_twist
from .core import AlgebraError
from .deformation import (
    DeformationError,
    FormalDeformation,
    are_equivalent,
    check_deformation,
    infinitesimal_class,
    reduce_step,
    trivialize,
)
from .derivations import derivation_space, inner_space

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_algebra(path: str):
    try:
        return io.parse_algebra_file(_read(path))
    except io.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load(parser, path: str, *args):
    try:
        return parser(_read(path), *args)
    except (io.FormatError, AlgebraError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _text(value) -> str:
    if isinstance(value, dict):
        return "\n".join(f"{k}: {_inline(v)}" for k, v in value.items())
    return str(value)


def _inline(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(", ", ": "))
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _emit(ctx, report: dict, code: int):
    fmt = ctx.obj["format"]
    if fmt == "structured":
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        click.echo(_text(report))
    ctx.exit(code)


def _algebra_json(alg) -> dict:
    return io.algebra_to_dict(alg)


def _matrix_json(M) -> list:
    return [[io.format_rational(x) for x in row] for row in M]


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(["text", "structured"]), default="text",
              show_default=True, help="Report format (structured = JSON).")
@click.pass_context
def main(ctx, fmt):
    """Check and manipulate multiplicative n-ary Hom-Nambu-Lie superalgebras."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt


@main.command("verify")
@click.argument("algebra", type=str)
@click.pass_context
def verify_cmd(ctx, algebra):
    """Check grading, super-skewness, the twisted identity and multiplicativity."""
    alg = _load_algebra(algebra)
    reports = verify(alg)
    out = {"algebra": alg.name or algebra, "valid": all(r.holds for r in reports)}
    for r in reports:
        out[r.axiom] = r.as_dict() if not r.holds else True
    _emit(ctx, out, EXIT_OK if out["valid"] else EXIT_FAIL)


@main.command("twist")
@click.argument("algebra")
@click.option("--beta", required=True, help="Map file with the endomorphism.")
@click.option("--out", "out_path", default=None, help="Write the twisted algebra here.")
@click.pass_context
def twist_cmd(ctx, algebra, beta, out_path):
    """Compose the bracket and alpha with an endomorphism beta."""
    alg = _load_algebra(algebra)
    b = _load(io.parse_map_file, beta, alg.space)
    try:
        rep = is_morphism(b, alg, alg)
    except AlgebraError as exc:
        raise InputError(str(exc)) from None
    if not rep.holds or not b.commutes_with(alg.alpha):
        witness = rep.witness if not rep.holds else ("alpha", "beta does not commute with alpha")
        _emit(ctx, {"twisted": False, "witness": [str(w) for w in witness]}, EXIT_FAIL)
    tw = yau_twist(alg, b)
    if out_path:
        Path(out_path).write_bytes(io.serialize_algebra(tw))
    _emit(ctx, {"twisted": True, "valid": True, "algebra": _algebra_json(tw)}, EXIT_OK)


@main.command("dsum")
@click.argument("a")
@click.argument("b")
@click.option("--out", "out_path", default=None, help="Write the direct sum here.")
@click.pass_context
def dsum_cmd(ctx, a, b, out_path):
    """Direct sum of two algebras of the same arity."""
    A, B = _load_algebra(a), _load_algebra(b)
    try:
        S = direct_sum(A, B)
    except AlgebraError as exc:
        raise InputError(str(exc)) from None
    valid = all(r.holds for r in verify(S))
    if out_path:
        Path(out_path).write_bytes(io.serialize_algebra(S))
    _emit(ctx, {"valid": valid, "algebra": _algebra_json(S)}, EXIT_OK if valid else EXIT_FAIL)


@main.command("graph")
@click.argument("algebra")
@click.option("--map", "map_path", required=True, help="Map file with an even map.")
@click.option("--target", default=None, help="Target algebra (defaults to the source).")
@click.pass_context
def graph_cmd(ctx, algebra, map_path, target):
    """Graph of a map and the morphism/subalgebra equivalence."""
    src = _load_algebra(algebra)
    dst = _load_algebra(target) if target else src
    f = _load(io.parse_map_file, map_path, src.space, dst.space)
    try:
        G = graph(f, src, dst)
        morph, sub = graph_is_subalgebra_iff_morphism(f, src, dst)
    except AlgebraError as exc:
        raise InputError(str(exc)) from None
    out = {
        "graph_basis": [[io.format_rational(x) for x in v] for v in G.basis],
        "is_morphism": morph,
        "graph_is_subalgebra": sub,
    }
    _emit(ctx, out, EXIT_OK if morph == sub else EXIT_FAIL)


@main.command("der")
@click.argument("algebra")
@click.option("--k", "k", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--parity", type=click.IntRange(0, 1), default=0, show_default=True)
@click.pass_context
def der_cmd(ctx, algebra, k, parity):
    """Basis of the alpha^k-derivations of a parity and the inner maps at that level."""
    alg = _load_algebra(algebra)
    D = derivation_space(alg, k, parity)
    out = {"k": k, "parity": parity, "dim": D.dim,
           "basis": [_matrix_json(m.matrix) for m in D.maps()]}
    if k >= 1:
        inn = inner_space(alg, k)
        out["inner_dim"] = inn.dim
        parts = [m for m in inn.maps() if m.parity == parity]
        out["inner_contained"] = all(D.contains(m) for m in parts)
    _emit(ctx, out, EXIT_OK if out.get("inner_contained", True) else EXIT_FAIL)


@main.command("cohom")
@click.argument("algebra")
@click.option("--level", type=int, default=None,
              help=f"Report the generic complex at this level (0..{MAX_LEVEL}).")
@click.pass_context
def cohom_cmd(ctx, algebra, level):
    """Deformation cohomology dimensions and rigidity (or a generic level)."""
    alg = _load_algebra(algebra)
    if level is not None:
        if not 0 <= level <= MAX_LEVEL:
            raise InputError(f"--level must be between 0 and {MAX_LEVEL}")
        out = {"level": level}
        for p, label in ((0, "even"), (1, "odd")):
            out[label] = cohomology_dim(alg, level, p)
        _emit(ctx, out, EXIT_OK)
    rep = rigidity_report(alg)
    out = {
        "H_def_even": rep["even"]["H"],
        "H_def_odd": rep["odd"]["H"],
        "Z_even": rep["even"]["Z"],
        "B_even": rep["even"]["B"],
        "Z_odd": rep["odd"]["Z"],
        "B_odd": rep["odd"]["B"],
        "rigid": rep["rigid"],
    }
    _emit(ctx, out, EXIT_OK)


@main.group("deform")
def deform_group():
    """Truncated formal deformations read from a terms file."""


def _deformation(algebra, terms, order):
    alg = _load_algebra(algebra)
    fs = _load(io.parse_terms_file, terms, alg, order)
    try:
        return FormalDeformation.from_terms(alg, fs, strict=False)
    except DeformationError as exc:
        raise InputError(str(exc)) from None


def _deform_options(f):
    f = click.option("--terms", required=True, help="Terms file with f_1..f_N.")(f)
    f = click.option("--order", type=click.IntRange(min=0), default=None,
                     help="Truncation order (defaults to the file's).")(f)
    return click.argument("algebra")(f)


@deform_group.command("check")
@_deform_options
@click.pass_context
def deform_check(ctx, algebra, order, terms):
    """Check the deformation equations order by order."""
    D = _deformation(algebra, terms, order)
    rep = check_deformation(D)
    out = rep.as_dict()
    if rep.valid_to_order >= 1:
        out["infinitesimal_is_cocycle"] = infinitesimal_class(D)[1]
    _emit(ctx, out, EXIT_OK if rep.valid else EXIT_FAIL)


@deform_group.command("reduce")
@_deform_options
@click.pass_context
def deform_reduce(ctx, algebra, order, terms):
    """Remove the lowest nonzero term when it is a coboundary."""
    D = _deformation(algebra, terms, order)
    rep = check_deformation(D)
    if not rep.valid:
        _emit(ctx, {"status": "invalid", "report": rep.as_dict()}, EXIT_FAIL)
    step = reduce_step(D)
    out = {"status": step.status, "order": step.order, "note": step.note}
    if step.status == "reduced":
        out["terms"] = json.loads(io.serialize_terms(step.deformation.terms[1:]))
        out["automorphism"] = json.loads(io.serialize_automorphism(
            [p.matrix for p in step.automorphism.terms[1:]]))
    _emit(ctx, out, EXIT_FAIL if step.status == "obstructed" else EXIT_OK)


@deform_group.command("trivialize")
@_deform_options
@click.pass_context
def deform_trivialize(ctx, algebra, order, terms):
    """Find Phi with pushforward(D, Phi) null, by repeated reduction."""
    D = _deformation(algebra, terms, order)
    rep = check_deformation(D)
    if not rep.valid:
        _emit(ctx, {"trivial": False, "report": rep.as_dict()}, EXIT_FAIL)
    W = trivialize(D)
    if W is None:
        _emit(ctx, {"trivial": False}, EXIT_FAIL)
    witness = json.loads(io.serialize_automorphism([p.matrix for p in W.terms[1:]]))
    _emit(ctx, {"trivial": True, "witness": witness}, EXIT_OK)


@deform_group.command("equiv")
@_deform_options
@click.option("--other", required=True, help="Terms file of the second deformation.")
@click.pass_context
def deform_equiv(ctx, algebra, order, terms, other):
    """Search for an equivalence between two deformations."""
    D1 = _deformation(algebra, terms, order)
    D2 = _deformation(algebra, other, order if order is not None else D1.order)
    N = min(D1.order, D2.order)
    for D, label in ((D1, "first"), (D2, "second")):
        rep = check_deformation(D)
        if rep.valid_to_order < N:
            _emit(ctx, {"equivalent": False, "invalid": label, "report": rep.as_dict()}, EXIT_FAIL)
    W = are_equivalent(D1, D2, N)
    if W is None:
        _emit(ctx, {"equivalent": False, "order": N}, EXIT_FAIL)
    witness = json.loads(io.serialize_automorphism([p.matrix for p in W.terms[1:]]))
    _emit(ctx, {"equivalent": True, "order": N, "witness": witness}, EXIT_OK)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
