"""Command-line interface: ``tsvs <command> <files...>``.

Each command builds a report, an ordered list of key/value fields, and
prints it as text (``key: value`` lines) or as a JSON object with the same
keys.  Exit status is 0 on success, 1 on a domain error and 2 on a parse
error; errors are printed on stderr prefixed by their class name.
"""

import argparse
import json
import sys

from . import __version__
from .bimod import MatrixHom, classify, endomorphism_basis, hom_similar, hom_validate, minimal_polynomial_in_ext, simple_from_orbit
from .canonical import (
    homogeneous_structure,
    hs_product,
    is_jordan_ordered,
    jordan_order_conjugate,
    jordan_ordered_profile,
    toeplitz_hom,
    triangularize_commuting,
)
from .config import Config
from .errors import FieldMismatch, ParseError, TsvsError
from .matrix import Matrix, jcf, similarity_solve
from .numfield import NumberField
from .parsing import (
    ExprParser,
    field_env,
    format_basis,
    format_hom,
    parse_basis,
    parse_field,
    parse_hom,
    parse_hs,
    parse_matrix,
)
from .poly import QQ, Poly
from .tensor import decompose, k0_group_structure, k0_presentation, kronecker_compose


class Report:
    def __init__(self):
        self.fields = []

    def add(self, key, value):
        self.fields.append((key, value))
        return self

    def as_dict(self):
        return {k: _jsonable(v) for k, v in self.fields}

    def text(self):
        lines = []
        for key, value in self.fields:
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  {_text_scalar(v)}" for v in value)
            else:
                lines.append(f"{key}: {_text_scalar(value)}")
        return "\n".join(lines) + "\n"

    def json(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"


def _text_scalar(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return "; ".join(f"{k}={_text_scalar(v)}" for k, v in value.items())
    return str(value)


def _jsonable(value):
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


# -- input helpers ----------------------------------------------------------------------


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _number_field(F):
    if F is QQ:
        return NumberField(Poly.x(QQ) - 1, gen_name="g")
    if not isinstance(F, NumberField):
        raise FieldMismatch(f"this command needs a number field, got {F.header()}")
    return F


def _elements(text, F):
    value = ExprParser(field_env(F)).parse(text)
    if not isinstance(value, list):
        value = [value]
    out = []
    for v in value:
        try:
            out.append(F.coerce(v))
        except TsvsError:
            raise ParseError(f"{v!r} is not an element of {F.header()}", 0) from None
    return out


def _fmt(F, x):
    return F.format_element(x)


def _orbit_entry(o):
    return {"size": o.size, "trivial": o.is_trivial, "factor": o.factor.format("x")}


# -- commands ---------------------------------------------------------------------------


def cmd_classify(args, cfg):
    K = _number_field(parse_field(_read(args.field)))
    table = classify(K)
    r = Report().add("field", K.header()).add("orbits", len(table.orbits))
    for o in table.orbits:
        r.add(f"orbit {o.id}", _orbit_entry(o))
    return r


def _simple(args):
    K = _number_field(parse_field(_read(args.field)))
    table = classify(K)
    try:
        orbit = table[args.orbit]
    except KeyError:
        raise FieldMismatch(f"field has no orbit {args.orbit}") from None
    basis = parse_basis(_read(args.basis), K) if args.basis else None
    return K, simple_from_orbit(K, orbit, basis=basis, table=table)


def cmd_simple(args, cfg):
    K, S = _simple(args)
    o = S.orbit
    r = Report().add("field", K.header()).add("orbit", o.id)
    r.add("size", o.size).add("factor", o.factor.format("x"))
    r.add("basis", format_basis(S.ext.basis))
    r.add("generator image", S.hom.gen_image.format())
    check = hom_validate(S.hom)
    r.add("check", check["check"])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_hom(S.hom))
        r.add("written", args.out)
    return r


def cmd_end(args, cfg):
    K, S = _simple(args)
    Ms = endomorphism_basis(S)
    r = Report().add("field", K.header()).add("orbit", S.orbit.id)
    r.add("basis", format_basis(S.ext.basis))
    for p, M in enumerate(Ms):
        mp = minimal_polynomial_in_ext(S.ext, S.ext.basis[p])
        r.add(f"M({p + 1})", {"matrix": M.format(), "minimal polynomial": mp.format("X")})
    r.add("checks", ["commutes with the image of phi", "pairwise commuting",
                     "structure constants", "minimal polynomials"])
    return r


def cmd_tensor(args, cfg):
    h1 = parse_hom(_read(args.hom1))
    h2 = parse_hom(_read(args.hom2))
    h = kronecker_compose(h1, h2)
    hom_validate(h)
    r = Report().add("field", h.field.header()).add("dimension", f"{h1.n} x {h2.n} = {h.n}")
    r.add("generator image", h.gen_image.format())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_hom(h))
        r.add("written", args.out)
    return r


def cmd_decompose(args, cfg):
    h = parse_hom(_read(args.hom))
    K = _number_field(h.field)
    if K is not h.field:
        h = MatrixHom(K, Matrix(K, [[K.coerce(x) for x in row] for row in h.gen_image.rows]))
    hom_validate(h)
    table = classify(K)
    dec = decompose(h, table)
    r = Report().add("field", K.header()).add("dimension", h.n)
    r.add("parts", " + ".join(f"V{oid}^{m}" for oid, m in dec.parts))
    for oid, m in dec.parts:
        o = table[oid]
        entry = {"multiplicity": m}
        entry.update(_orbit_entry(o))
        r.add(f"orbit {oid}", entry)
    return r


def cmd_k0(args, cfg):
    K = _number_field(parse_field(_read(args.field)))
    table = classify(K)
    pres = k0_presentation(K, table)
    r = Report().add("field", K.header()).add("presentation", pres.text())
    r.add("generators", [f"{pres.generator(i)} = V{oid} (size {s})"
                         for i, (oid, s) in enumerate(zip(pres.orbit_ids, pres.orbit_sizes))])
    r.add("structure constants", [
        f"{pres.generator(i)}*{pres.generator(j)}: constant={pres.constants[i][j]}; "
        f"coefficients={' '.join(str(c) for c in pres.coefficients[i][j])}"
        for i in range(pres.rank) for j in range(pres.rank)])
    r.add("summands", [f"V{o.id}: {desc}" for o, desc in k0_group_structure(K, table)])
    if pres.automorphisms is not None:
        r.add("automorphism group", pres.group_name)
        r.add("automorphism table", [" ".join(str(c + 1) for c in row) for row in pres.automorphisms])
    return r


def cmd_similar(args, cfg):
    h1 = parse_hom(_read(args.hom1))
    h2 = parse_hom(_read(args.hom2))
    if h1.field != h2.field:
        raise FieldMismatch("homs over different fields")
    r = Report().add("field", h1.field.header())
    if isinstance(h1.field, NumberField):
        r.add("similar", hom_similar(h1, h2, seed=cfg.seed)).add("method", "decomposition")
        return r
    P = similarity_solve(h1.gen_image, h2.gen_image, seed=cfg.seed) if h1.n == h2.n else None
    r.add("similar", P is not None).add("method", "conjugator")
    if P is not None:
        r.add("conjugator", P.format())
    return r


def cmd_jcf(args, cfg):
    M = parse_matrix(_read(args.matrix))
    F = M.field
    eigs = _elements(args.eigenvalues, F) if args.eigenvalues else None
    form = jcf(M, eigs)
    r = Report().add("field", F.header())
    r.add("eigenvalues", [f"{_fmt(F, lam)}: {' '.join(str(n) for n in sizes)}"
                          for lam, sizes in zip(form.eigenvalues, form.blocks)])
    r.add("J", form.J.format()).add("P", form.P.format())
    return r


def cmd_jordan_order(args, cfg):
    A = parse_matrix(_read(args.matrix))
    F = A.field
    lam, sizes, dims, required = jordan_ordered_profile(A)
    P, J = jordan_order_conjugate(A)
    r = Report().add("field", F.header()).add("jordan ordered", is_jordan_ordered(A))
    r.add("eigenvalue", _fmt(F, lam)).add("blocks", " ".join(str(s) for s in sizes))
    r.add("eigenspace dimensions", " ".join(str(d) for d in dims))
    r.add("P", P.format()).add("J", J.format())
    return r


def cmd_hs_compose(args, cfg):
    d = parse_hs(_read(args.hs1))
    e = parse_hs(_read(args.hs2))
    prod = hs_product(d, e)
    r = Report().add("first", d.format()).add("second", e.format())
    r.add("product", prod.header()).add("order", prod.order)
    r.add("leibniz checked through", prod.certified_order)
    return r


def cmd_hs_hom(args, cfg):
    d = parse_hs(_read(args.hs))
    h = toeplitz_hom(d)
    check = hom_validate(h)
    r = Report().add("hs", d.header()).add("order", d.order)
    r.add("generator image", h.gen_image.format()).add("check", check["check"])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_hom(h))
        r.add("written", args.out)
    return r


def cmd_triangularize(args, cfg):
    h = parse_hom(_read(args.hom))
    F = h.field
    eigs = _elements(args.eigenvalues, F) if args.eigenvalues else None
    P, T = triangularize_commuting(h, eigs)
    r = Report().add("field", F.header())
    r.add("diagonal", [_fmt(F, x) for x in T.diagonal()])
    r.add("P", P.format()).add("T", T.format())
    return r


def cmd_homogeneous(args, cfg):
    h = parse_hom(_read(args.hom))
    a = parse_hom(_read(args.diag))
    if a.field != h.field:
        raise FieldMismatch("the diagonal hom is over a different field")
    form = homogeneous_structure(h, a, seed=cfg.seed)
    F = h.field
    r = Report().add("field", F.header()).add("blocks", " ".join(str(b) for b in form.blocks))
    for i, (d, rep, alpha) in enumerate(zip(form.derivations, form.representation, form.alphas)):
        entry = {"derivation": d.format(), "form": rep}
        if alpha:
            entry["alpha"] = " ".join(_fmt(F, a) for a in alpha)
        r.add(f"A{i + 1}{i + 1}", entry)
    r.add("generator image", form.hom.gen_image.format()).add("P", form.P.format())
    return r


COMMANDS = {
    "classify": cmd_classify,
    "simple": cmd_simple,
    "end": cmd_end,
    "tensor": cmd_tensor,
    "decompose": cmd_decompose,
    "k0": cmd_k0,
    "similar": cmd_similar,
    "jcf": cmd_jcf,
    "jordan-order": cmd_jordan_order,
    "hs-compose": cmd_hs_compose,
    "hs-hom": cmd_hs_hom,
    "triangularize": cmd_triangularize,
    "homogeneous": cmd_homogeneous,
}


def build_parser():
    p = argparse.ArgumentParser(prog="tsvs", description="Exact computations with two-sided vector spaces.")
    p.add_argument("--version", action="version", version=f"tsvs {__version__}")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    p.add_argument("--cache-dir", default=None)
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text):
        return sub.add_parser(name, help=help_text)

    sp = add("classify", "orbit table of a number field")
    sp.add_argument("field")
    for name, text in (("simple", "simple bimodule of an orbit"), ("end", "endomorphism ring of a simple")):
        sp = add(name, text)
        sp.add_argument("field")
        sp.add_argument("--orbit", type=int, required=True)
        sp.add_argument("--basis")
        if name == "simple":
            sp.add_argument("--out")
    sp = add("tensor", "Kronecker composition of two homs")
    sp.add_argument("hom1")
    sp.add_argument("hom2")
    sp.add_argument("--out")
    sp = add("decompose", "multiplicities of simples in a hom")
    sp.add_argument("hom")
    sp = add("k0", "presentation of the Grothendieck ring")
    sp.add_argument("field")
    sp = add("similar", "decide isomorphism of two homs")
    sp.add_argument("hom1")
    sp.add_argument("hom2")
    sp = add("jcf", "Jordan canonical form of a matrix")
    sp.add_argument("matrix")
    sp.add_argument("--eigenvalues")
    sp = add("jordan-order", "upper triangular conjugation of a Jordan-ordered matrix")
    sp.add_argument("matrix")
    sp = add("hs-compose", "product of two higher derivations")
    sp.add_argument("hs1")
    sp.add_argument("hs2")
    sp = add("hs-hom", "Toeplitz hom of a higher derivation")
    sp.add_argument("hs")
    sp.add_argument("--out")
    sp = add("triangularize", "upper triangular form of a hom")
    sp.add_argument("hom")
    sp.add_argument("--eigenvalues")
    sp = add("homogeneous", "block structure of an a-homogeneous hom")
    sp.add_argument("hom")
    sp.add_argument("--diag", required=True)
    return p


def run(argv=None, stdout=None, stderr=None, environ=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = Config(output_format=args.format, cache_dir=args.cache_dir).with_env(environ)
    if args.seed is not None:
        cfg = Config(output_format=cfg.output_format, cache_dir=cfg.cache_dir, seed=args.seed)
    cfg.apply()
    try:
        report = COMMANDS[args.command](args, cfg)
    except ParseError as exc:
        stderr.write(f"ParseError: {exc}\n")
        return 2
    except TsvsError as exc:
        stderr.write(f"{exc.name}: {exc}\n")
        return 1
    except ZeroDivisionError as exc:
        stderr.write(f"DivisionByZero: {exc}\n")
        return 1
    stdout.write(report.json() if cfg.output_format == "json" else report.text())
    return 0


def main(argv=None):
    sys.exit(run(argv))

