"""Command-line interface.

    heckeforge [--group G] [--format text|json] [--output PATH] <command> ...

Cocharacters are comma-separated integers in the lattice basis (``1,-1``) or
sums of simple coroots (``a^``, ``a1^+2a2^``).  Group elements are
``"lam:word"`` strings (``"1:1"`` is t(1) s1) or ``s<i>``.

Exit codes: 0 success, 1 verification or invariant failure (a JSON
counterexample is printed), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .affine_weyl import affine_weyl_group
from .bernstein import OPPOSITE, STANDARD, theta, z_basis_element
from .central_map import (
    central_ic_class,
    expand_in_z_basis,
    spherical_crosscheck,
    verify_bernstein_iso,
)
from .dual_weights import tensor_multiplicities, weight_multiplicities, weyl_dimension
from .errors import HeckeForgeError, InvariantViolation
from .exactpoly import LaurentPoly
from .hecke import hecke_algebra
from .parahoric import parahoric_algebra, parse_facet
from .rootdata import PRESETS, RootDatum, load_root_datum

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__("verification failed")
        self.payload = payload


# -- argument parsing helpers -----------------------------------------------
_TERM = re.compile(r"^([+-]?\d*)a(\d*)\^$")


def parse_cocharacter(rd: RootDatum, text: str) -> tuple:
    text = text.strip().replace(" ", "")
    if "a" in text:
        total = [0] * rd.rank
        for part in re.findall(r"[+-]?[^+-]+", text):
            m = _TERM.match(part)
            if not m:
                raise UsageError(f"cannot parse cocharacter term {part!r}")
            k = m.group(1)
            k = 1 if k in ("", "+") else -1 if k == "-" else int(k)
            i = int(m.group(2) or 1)
            if not 1 <= i <= rd.num_simple:
                raise UsageError(f"no simple coroot a{i}^ in {rd.name}")
            for j, v in enumerate(rd.simple_coroots[i - 1]):
                total[j] += k * v
        return tuple(total)
    try:
        lam = tuple(int(a) for a in text.split(",") if a != "")
    except ValueError:
        raise UsageError(f"cannot parse cocharacter {text!r}") from None
    if len(lam) != rd.rank:
        raise UsageError(f"{rd.name} cocharacters have {rd.rank} coordinates, got {text!r}")
    return lam


def parse_element(rd: RootDatum, text: str):
    G = affine_weyl_group(rd)
    try:
        x = G.parse(text)
    except (ValueError, KeyError) as e:
        raise UsageError(f"cannot parse group element {text!r}: {e}") from None
    return x


def _dominant(rd: RootDatum, text: str) -> tuple:
    mu = parse_cocharacter(rd, text)
    if not rd.is_dominant(mu):
        raise UsageError(f"{list(mu)} is not dominant")
    return mu


def _positive(value: str) -> int:
    v = int(value)
    if v < 0:
        raise argparse.ArgumentTypeError("bound must be nonnegative")
    return v


# -- output -----------------------------------------------------------------
def _poly_text(p: LaurentPoly) -> str:
    return str(p)


def _hecke_text(h) -> str:
    if h.is_zero():
        return "0"
    G = h.algebra.G
    return "\n".join(f"T[{G.format(x)}]  {h.coeff(x)}" for x in h.support())


def _zexp_json(zexp: dict) -> list:
    return [{"mu": list(k), "coeff": v.to_json()} for k, v in zexp.items()]


# -- commands ---------------------------------------------------------------
def cmd_rootdatum_show(rd, args):
    G = affine_weyl_group(rd)
    data = rd.to_json()
    data.update(
        {
            "name": rd.name,
            "cartan_matrix": [list(r) for r in rd.cartan_matrix],
            "weyl_order": len(rd.weyl),
            "positive_roots": [list(a) for a in rd.positive_roots],
            "positive_coroots": [list(a) for a in rd.positive_coroots],
            "affine_generators": {str(i): G.to_json(s) for i, s in G.gens.items()},
            "omega_order": G.omega_order,
        }
    )
    lines = [
        f"group {rd.name}  rank {rd.rank}  semisimple rank {rd.num_simple}",
        f"cartan matrix {[list(r) for r in rd.cartan_matrix]}",
        f"|W0| = {len(rd.weyl)}  |Phi+| = {len(rd.positive_roots)}",
        f"|Omega| = {G.omega_order if G.omega_order is not None else 'infinite'}",
    ]
    lines += [f"s{i} = {G.format(s)}" for i, s in G.gens.items()]
    return data, "\n".join(lines)


def _omegas(G):
    if G.omega_order is None:
        return G.omega_elements(box=1)[0]
    return None


def cmd_weyl_enumerate(rd, args):
    G = affine_weyl_group(rd)
    elts = G.elements_up_to_length(args.max_len, _omegas(G))
    rows = [{"elt": G.to_json(x), "length": G.length(x)} for x in elts]
    text = "\n".join(f"{G.length(x)}\t{G.format(x)}" for x in elts)
    return {"group": rd.name, "max_len": args.max_len, "elements": rows}, text


def cmd_length(rd, args):
    G = affine_weyl_group(rd)
    x = parse_element(rd, args.elt)
    word, om = G.reduced_word(x)
    data = {"elt": G.to_json(x), "length": G.length(x), "reduced_word": list(word), "omega": G.to_json(om)}
    return data, f"{G.length(x)}  word {list(word)}  omega {G.format(om)}"


def cmd_bruhat(rd, args):
    G = affine_weyl_group(rd)
    v, w = parse_element(rd, args.v), parse_element(rd, args.w)
    r = G.bruhat_leq(v, w)
    return {"v": G.to_json(v), "w": G.to_json(w), "leq": r}, str(r).lower()


def cmd_adm(rd, args):
    G = affine_weyl_group(rd)
    mu = _dominant(rd, args.mu)
    if args.facet is None:
        elts = sorted(G.admissible_set(mu), key=G.sort_key)
        data = {"mu": list(mu), "count": len(elts), "elements": [G.to_json(x) for x in elts]}
        text = "\n".join(f"{G.length(x)}\t{G.format(x)}" for x in elts) + f"\ncount {len(elts)}"
        return data, text
    f = parse_facet(rd, args.facet)
    cosets = G.admissible_set_f(mu, f)
    data = {
        "mu": list(mu),
        "facet": list(f.gens),
        "count": len(cosets),
        "cosets": [{"min_rep": G.to_json(c.min_rep), "length": c.length, "size": len(c.elements)} for c in cosets],
    }
    text = "\n".join(f"{c.length}\t{G.format(c.min_rep)}\t|C|={len(c.elements)}" for c in cosets)
    return data, text + f"\ncount {len(cosets)}"


def _load_hecke_arg(H, text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return H.from_json(json.load(fh))
    return H.T(parse_element(H.rd, text))


def cmd_hecke_mul(rd, args):
    H = hecke_algebra(rd)
    a, b = _load_hecke_arg(H, args.a), _load_hecke_arg(H, args.b)
    p = a * b
    return p.to_json(), _hecke_text(p)


def _borel(args) -> str:
    return OPPOSITE if getattr(args, "opposite", False) else STANDARD


def cmd_hecke_theta(rd, args):
    lam = parse_cocharacter(rd, args.lam)
    h = theta(rd, lam, _borel(args))
    data = {"lam": list(lam), "borel": _borel(args), **h.to_json()}
    return data, _hecke_text(h)


def cmd_hecke_center(rd, args):
    mu = _dominant(rd, args.mu)
    h = z_basis_element(rd, mu, _borel(args))
    data = {"mu": list(mu), "borel": _borel(args), "central": True, **h.to_json()}
    return data, _hecke_text(h)


def cmd_parahoric_table(rd, args):
    A = parahoric_algebra(rd, args.facet)
    table = A.structure_table(args.max_len)
    G = A.G
    lines = [f"facet {list(A.facet.gens)}  P_f = {A.P}"]
    for e in table["entries"]:
        C, D = G.from_json(e["C"]), G.from_json(e["D"])
        terms = " + ".join(f"({LaurentPoly.from_json(t['coeff'])})m[{G.format(G.from_json(t['E']))}]" for t in e["expansion"])
        lines.append(f"m[{G.format(C)}] * m[{G.format(D)}] = {terms or '0'}")
    return table, "\n".join(lines)


def cmd_central_zmu(rd, args):
    mu = _dominant(rd, args.mu)
    Z = central_ic_class(rd, mu, _borel(args))
    zexp = expand_in_z_basis(rd, Z, _borel(args))
    data = {"mu": list(mu), "central": True, "z_expansion": _zexp_json(zexp), **Z.to_json()}
    text = "z-expansion: " + " + ".join(f"({v})z[{','.join(map(str, k))}]" for k, v in zexp.items())
    return data, text + "\n" + _hecke_text(Z)


def cmd_central_verify(rd, args):
    rep = verify_bernstein_iso(rd, args.bound, _borel(args), central_box=args.central_box)
    data = rep.to_json()
    if not rep.passed:
        raise VerificationFailed(data)
    text = "\n".join(
        f"mu={c['mu']} central={c['central']} unitriangular={c['unitriangular']} integral={c['integral']}"
        for c in rep.checks
    )
    text += f"\nproducts checked {len(rep.products)}\npass"
    return data, text


def cmd_central_spherical(rd, args):
    rep = spherical_crosscheck(rd, args.bound, _borel(args))
    if not rep["pass"]:
        raise VerificationFailed(rep)
    return rep, f"{len(rep['checks'])} products agree\npass"


def cmd_dual_weights(rd, args):
    mu = _dominant(rd, args.mu)
    ch = weight_multiplicities(rd, mu, check_oracle=args.check)
    data = ch.to_json()
    data["dimension"] = ch.dimension
    text = "\n".join(f"{list(nu)}\t{m}" for nu, m in ch.mults.items())
    return data, text + f"\ndimension {ch.dimension} (Weyl: {weyl_dimension(rd, mu)})"


def cmd_dual_tensor(rd, args):
    mu, mu2 = _dominant(rd, args.mu), _dominant(rd, args.mu2)
    tm = tensor_multiplicities(rd, mu, mu2)
    data = {"mu": list(mu), "mu2": list(mu2), "decomposition": [{"hw": list(k), "m": v} for k, v in tm.items()]}
    return data, "\n".join(f"{list(k)}\t{v}" for k, v in tm.items())


def cmd_specialize(rd, args):
    with open(args.file) as fh:
        obj = json.load(fh)
    q0 = args.q
    if "facet" in obj and obj.get("terms") and "C" in obj["terms"][0]:
        A = parahoric_algebra(rd, ",".join(map(str, obj["facet"])))
        G = A.G
        rows = [{"C": t["C"], "value": LaurentPoly.from_json(t["coeff"])(q0)} for t in obj["terms"]]
        rows = [r for r in rows if r["value"]]
        text = "\n".join(f"m[{G.format(G.from_json(r['C']))}]\t{r['value']}" for r in rows)
        return {"q": q0, "facet": obj["facet"], "terms": rows}, text
    H = hecke_algebra(rd)
    h = H.from_json(obj)
    vals = h.specialize(q0)
    G = H.G
    order = sorted(vals, key=G.sort_key)
    data = {"q": q0, "terms": [{"elt": G.to_json(x), "value": vals[x]} for x in order]}
    return data, "\n".join(f"T[{G.format(x)}]\t{vals[x]}" for x in order)


# -- parser -----------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heckeforge", description="Exact generic Hecke algebra computations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default=argparse.SUPPRESS, help=f"preset ({', '.join(PRESETS)}) or root-datum JSON path")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS, help="write to this path instead of stdout")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")
    p.add_argument("--group", default="SL2", help=f"preset ({', '.join(PRESETS)}) or root-datum JSON path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default=None, help="write to this path instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = p.add_subparsers(dest="command", required=True)

    def leaf(parent, name, func, help_):
        sp = parent.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    def group(name, help_):
        g = sub.add_parser(name, help=help_)
        return g.add_subparsers(dest="sub", required=True)

    rd_ = group("rootdatum", "root datum summaries")
    leaf(rd_, "show", cmd_rootdatum_show, "print the root datum and affine generators")

    w = group("weyl", "extended affine Weyl group")
    sp = leaf(w, "enumerate", cmd_weyl_enumerate, "list elements up to a length bound")
    sp.add_argument("--max-len", type=_positive, required=True)

    sp = leaf(sub, "length", cmd_length, "length and reduced word of an element")
    sp.add_argument("elt")
    sp = leaf(sub, "bruhat", cmd_bruhat, "test v <= w in the Bruhat order")
    sp.add_argument("v")
    sp.add_argument("w")
    sp = leaf(sub, "adm", cmd_adm, "admissible set of a dominant cocharacter")
    sp.add_argument("mu")
    sp.add_argument("--facet", default=None)

    h = group("hecke", "Iwahori-Hecke algebra")
    sp = leaf(h, "mul", cmd_hecke_mul, "product of two basis elements (or @file.json elements)")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = leaf(h, "theta", cmd_hecke_theta, "Bernstein element theta_lam")
    sp.add_argument("lam")
    sp.add_argument("--opposite", action="store_true", help="use the opposite Borel")
    sp = leaf(h, "center", cmd_hecke_center, "orbit sum z_mu")
    sp.add_argument("mu")
    sp.add_argument("--opposite", action="store_true")

    pa = group("parahoric", "parahoric Hecke algebras")
    sp = leaf(pa, "table", cmd_parahoric_table, "structure constants in the m_C basis")
    sp.add_argument("--facet", required=True)
    sp.add_argument("--max-len", type=_positive, required=True)

    c = group("central", "central elements and the Bernstein isomorphism")
    sp = leaf(c, "zmu", cmd_central_zmu, "Z_mu and its z-basis expansion")
    sp.add_argument("mu")
    sp.add_argument("--opposite", action="store_true")
    sp = leaf(c, "verify", cmd_central_verify, "verify Z_mu against z_mu up to a length bound")
    sp.add_argument("--bound", type=_positive, required=True)
    sp.add_argument("--central-box", type=_positive, default=1)
    sp.add_argument("--opposite", action="store_true")
    sp = leaf(c, "spherical", cmd_central_spherical, "compare f0-compression products with Satake constants")
    sp.add_argument("--bound", type=_positive, required=True)
    sp.add_argument("--opposite", action="store_true")

    d = group("dual", "dual group representations")
    sp = leaf(d, "weights", cmd_dual_weights, "weight multiplicities of V(mu)")
    sp.add_argument("mu")
    sp.add_argument("--check", action="store_true", help="cross-check against the Weyl character formula")
    sp = leaf(d, "tensor", cmd_dual_tensor, "decompose V(mu) x V(mu')")
    sp.add_argument("mu")
    sp.add_argument("mu2")

    sp = leaf(sub, "specialize", cmd_specialize, "evaluate a Hecke or parahoric element JSON at q")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("file")
    return p


def _emit(args, data, text) -> None:
    out = json.dumps(data, indent=2) + "\n" if args.format == "json" else text.rstrip("\n") + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        rd = load_root_datum(args.group)
        data, text = args.func(rd, args)
    except VerificationFailed as e:
        sys.stdout.write(json.dumps(e.payload, indent=2) + "\n")
        return EXIT_FAIL
    except InvariantViolation as e:
        sys.stdout.write(
            json.dumps({"error": type(e).__name__, "message": str(e), "counterexample": e.payload}, indent=2) + "\n"
        )
        return EXIT_FAIL
    except (UsageError, HeckeForgeError, ValueError, KeyError, OSError) as e:
        sys.stderr.write(f"heckeforge: error: {e}\n")
        return EXIT_USAGE
    _emit(args, data, text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
