"""Full report assembly: one deterministic document per spec file.

The document is a plain dict with stable key order, so JSON output is
byte-stable across runs.  Exact values are serialized as integers or
"p/q" strings; only the asymptotics section carries floats, rendered
to 15 significant digits.  The input spec is echoed verbatim so a
report is self-describing and reproducible from its own echo.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

from .algebra import char_poly, det, has_root_of_unity_eigenvalue
from .congruences import check_dold_lefschetz, check_euler, check_gauss
from .errors import NotBlockCompatible, NotConstantRatio, NotCyclic
from .invariants import (coincidence_numbers, coincidence_trichotomy,
                         lefschetz, lefschetz_sequence, nielsen,
                         nielsen_sequence, reidemeister, reidemeister_sequence)
from .manifolds import (is_virtually_unipotent, reidemeister_zeta_defined,
                        validate_spec)
from .ratfunc import radius_of_convergence
from .specio import ParsedSpec, serialize_spec
from .zetas import (artin_mazur_zeta, asymptotic_nielsen, entropy_lower_bound,
                    lefschetz_zeta, nielsen_zeta, radius_report,
                    verify_functional_equation)

CONGRUENCE_N_MAX = 30


def _rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _flt(x: float) -> str:
    return format(float(x), ".15g")


def _num(v):
    return "inf" if v == math.inf else int(v)


def _zeta_entry(result) -> dict:
    c = result.construction
    entry = {
        "which": result.which,
        "defined": True,
        "function": str(result.function),
        "numerator": [_rat(x) for x in result.function.num.coeffs],
        "denominator": [_rat(x) for x in result.function.den.coeffs],
        "construction": {"kind": c.kind},
    }
    if c.kind == "sign-formula":
        entry["construction"].update({"case": c.case, "p": c.p, "n": c.n})
    return entry


def _congruence_entry(rep, sequence: str, **extra) -> dict:
    entry = {"kind": rep.kind, "sequence": sequence}
    entry.update(extra)
    entry["passed"] = rep.passed
    entry["violations"] = [[list(n) if isinstance(n, tuple) else n, r]
                           for n, r in rep.violations]
    entry["skipped"] = list(rep.skipped)
    return entry


def congruence_entries(spec, mapping, n_max: int = CONGRUENCE_N_MAX) -> list:
    """The standard congruence battery for one map: Dold on the
    Lefschetz sequence, Gauss on Nielsen and Reidemeister (infinite
    iterates skipped), Euler at p = 2, 3 on Lefschetz."""
    return [
        _congruence_entry(
            check_dold_lefschetz(spec, mapping, n_max),
            "lefschetz", n_max=n_max),
        _congruence_entry(
            check_gauss(nielsen_sequence(spec, mapping), n_max),
            "nielsen", n_max=n_max),
        _congruence_entry(
            check_gauss(reidemeister_sequence(spec, mapping), n_max),
            "reidemeister", n_max=n_max),
        _congruence_entry(
            check_euler(lefschetz_sequence(spec, mapping), 2, 3),
            "lefschetz", p=2, r_max=3),
        _congruence_entry(
            check_euler(lefschetz_sequence(spec, mapping), 3, 2),
            "lefschetz", p=3, r_max=2),
    ]


def asymptotics_entry(spec, mapping, nz, tol: float = 1e-10) -> dict:
    """Growth rate, entropy, and zeta radius with its cross-check,
    suppressed when 1 is an eigenvalue of the linear part."""
    one_in_spectrum = char_poly(mapping.linear)(Fraction(1)) == 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        n_inf = asymptotic_nielsen(spec, mapping, tol=tol)
        entropy = entropy_lower_bound(spec, mapping, tol=tol)
        if one_in_spectrum:
            radius = radius_of_convergence(nz.function)
            radius_check = "suppressed: 1 is an eigenvalue of the linear part"
        else:
            radius = radius_report(spec, mapping, nz, tol=tol)
            radius_check = "ok: radius * growth rate = 1 within 1e-6"
    return {
        "n_infinity": _flt(n_inf),
        "entropy": _flt(entropy),
        "radius": _flt(radius),
        "radius_check": radius_check,
    }


def _fixed_point_sections(parsed: ParsedSpec) -> dict:
    spec, mapping = parsed.spec, parsed.mapping
    opts = parsed.options
    n_max = opts.n_max
    doc: dict = {}

    ls = [lefschetz(spec, mapping, n) for n in range(1, n_max + 1)]
    ns = [nielsen(spec, mapping, n) for n in range(1, n_max + 1)]
    rs = [reidemeister(spec, mapping, n) for n in range(1, n_max + 1)]
    doc["numbers"] = {
        "n_max": n_max,
        "lefschetz": [_num(v) for v in ls],
        "nielsen": [_num(v) for v in ns],
        "reidemeister": [_num(v) for v in rs],
    }

    lz = lefschetz_zeta(spec, mapping)
    nz = nielsen_zeta(spec, mapping, tol=opts.tolerance)
    az = artin_mazur_zeta(spec, mapping, tol=opts.tolerance)
    zetas = [_zeta_entry(lz), _zeta_entry(nz)]
    definedness = reidemeister_zeta_defined(spec, mapping)
    if definedness.status == "defined":
        rz_entry = _zeta_entry(nz)
        rz_entry["which"] = "Reidemeister"
        zetas.append(rz_entry)
    elif definedness.status == "undefined":
        zetas.append({
            "which": "Reidemeister", "defined": False,
            "reason": (f"R(f^{definedness.witness_n}) is infinite "
                       f"(holonomy element {definedness.witness_label!r})"),
        })
    else:
        zetas.append({
            "which": "Reidemeister", "defined": False,
            "reason": "definedness not certified within the scan bound",
        })
    zetas.append(_zeta_entry(az))
    doc["zetas"] = zetas

    d = det(mapping.linear)
    if not spec.orientable:
        doc["functional_equation"] = {"skipped": "non-orientable manifold"}
    elif d == 0:
        doc["functional_equation"] = {"skipped": "map degree is zero"}
    else:
        # Holonomy data that is not realizable by a free action (an
        # orbifold-style quotient) can leave a genuine power of z in the
        # ratio; the report records that instead of aborting.
        try:
            fe = verify_functional_equation(spec, mapping, nz,
                                            tol=opts.tolerance)
        except NotConstantRatio as e:
            doc["functional_equation"] = {"failed": str(e)}
        else:
            doc["functional_equation"] = {
                "holds": fe.holds,
                "epsilon": _rat(fe.epsilon),
                "degree": _rat(fe.degree_d),
                "case": fe.case,
            }

    one_in_spectrum = char_poly(mapping.linear)(Fraction(1)) == 0
    doc["asymptotics"] = asymptotics_entry(spec, mapping, nz,
                                           tol=opts.tolerance)

    doc["congruences"] = congruence_entries(spec, mapping)

    root_of_unity = has_root_of_unity_eigenvalue(mapping.linear)
    unipotent = is_virtually_unipotent(spec, mapping)
    if definedness.status == "defined":
        rz_text = "defined"
        if abs(d) == 1:
            note = ("every iterate has a finite Reidemeister number; a "
                    "homeomorphism with this property can only live on an "
                    "infra-nilmanifold")
        else:
            note = "every iterate has a finite Reidemeister number"
    elif definedness.status == "undefined":
        rz_text = (f"undefined: R(f^{definedness.witness_n}) is infinite "
                   f"(holonomy element {definedness.witness_label!r})")
        note = "Reidemeister zeta undefined"
        if root_of_unity:
            note += ("; a root-of-unity eigenvalue of the linear part is "
                     "present, which forces infinite Reidemeister numbers "
                     "along a subsequence")
    else:
        rz_text = "unknown: not certified within the scan bound"
        note = "definedness of the Reidemeister zeta is undecided"
    doc["diagnostics"] = {
        "reidemeister_zeta": rz_text,
        "root_of_unity_eigenvalue": root_of_unity,
        "virtually_unipotent": unipotent,
        "one_in_spectrum": one_in_spectrum,
        "note": note,
    }
    return doc


def _coincidence_sections(parsed: ParsedSpec) -> dict:
    spec = parsed.spec
    f, g = parsed.mapping, parsed.mapping2
    n_max = parsed.options.n_max
    doc: dict = {}
    table = [coincidence_numbers(spec, f, g, n) for n in range(1, n_max + 1)]
    doc["coincidence_numbers"] = {
        "n_max": n_max,
        "lefschetz": [c.lefschetz for c in table],
        "nielsen": (["not defined (non-orientable)"] if not spec.orientable
                    else [c.nielsen for c in table]),
        "reidemeister": [_num(c.reidemeister) for c in table],
    }
    if not spec.orientable:
        doc["trichotomy"] = {"skipped": "non-orientable manifold"}
        return doc
    try:
        tri = coincidence_trichotomy(spec, f, g)
    except NotCyclic:
        doc["trichotomy"] = {"skipped": "holonomy is not cyclic"}
        return doc
    except NotBlockCompatible as e:
        doc["trichotomy"] = {"skipped": f"not block compatible: {e}"}
        return doc
    doc["trichotomy"] = {
        "case": tri.case,
        "nielsen": tri.predicted_nielsen,
        "det_diff_sign": tri.det_diff_sign,
        "det_sum_sign": tri.det_sum_sign,
        "trivial_dim": tri.m_triv,
        "sign_dim": tri.k_tau,
    }
    return doc


def build_report(parsed: ParsedSpec) -> dict:
    """Assemble the full document for one spec file."""
    validation = validate_spec(parsed.spec)
    doc: dict = {
        "schema": 1,
        "input": serialize_spec(parsed),
        "validation": {
            "orientable": validation.orientable,
            "holonomy_order": parsed.spec.order,
            "element_orders": [[l, o] for l, o in validation.element_orders],
        },
    }
    if parsed.is_coincidence:
        doc.update(_coincidence_sections(parsed))
    else:
        doc.update(_fixed_point_sections(parsed))
    return doc


# --------------------------------------------------------------------------
# human rendering
# --------------------------------------------------------------------------


def _human_numbers(doc: dict, out: list) -> None:
    num = doc.get("numbers") or doc.get("coincidence_numbers")
    if num is None:
        return
    coincidence = "coincidence_numbers" in doc
    out.append("invariants (n = 1..%d)%s:" % (
        num["n_max"], " for the pair (f, g)" if coincidence else ""))
    rows = [("L", num["lefschetz"]),
            ("N", num["nielsen"]),
            ("R", num["reidemeister"])]
    for label, vals in rows:
        out.append(f"  {label}: " + ", ".join(str(v) for v in vals))


def render_human(doc: dict) -> str:
    out = [f"spec: {doc['input']['name']} "
           f"(dimension {doc['input']['dimension']}, holonomy order "
           f"{doc['validation']['holonomy_order']}, "
           + ("orientable" if doc["validation"]["orientable"]
              else "non-orientable") + ")"]
    _human_numbers(doc, out)
    for z in doc.get("zetas", ()):
        if z["defined"]:
            c = z["construction"]
            how = c["kind"] if c["kind"] == "direct" else \
                f"{c['kind']} ({c['case']}, p={c['p']}, n={c['n']})"
            out.append(f"{z['which']} zeta: {z['function']}   [{how}]")
        else:
            out.append(f"{z['which']} zeta: undefined ({z['reason']})")
    fe = doc.get("functional_equation")
    if fe is not None:
        if "skipped" in fe:
            out.append(f"functional equation: skipped ({fe['skipped']})")
        elif "failed" in fe:
            out.append(f"functional equation: does not hold ({fe['failed']})")
        else:
            out.append(f"functional equation: holds, epsilon = {fe['epsilon']}"
                       f", degree = {fe['degree']}, case = {fe['case']}")
    asym = doc.get("asymptotics")
    if asym is not None:
        out.append(f"asymptotics: N_infinity = {asym['n_infinity']}, "
                   f"entropy = {asym['entropy']}, radius = {asym['radius']}")
        out.append(f"  radius check: {asym['radius_check']}")
    for c in doc.get("congruences", ()):
        where = (f"p={c['p']}, r<={c['r_max']}" if c["kind"] == "Euler"
                 else f"n<={c['n_max']}")
        line = (f"congruence {c['kind']} on {c['sequence']} ({where}): "
                + ("pass" if c["passed"] else f"FAIL {c['violations']}"))
        if c["skipped"]:
            line += f" (skipped n with infinite terms: {c['skipped']})"
        out.append(line)
    tri = doc.get("trichotomy")
    if tri is not None:
        if "skipped" in tri:
            out.append(f"trichotomy: skipped ({tri['skipped']})")
        else:
            out.append(f"trichotomy: case {tri['case']}, N(f,g) = "
                       f"{tri['nielsen']}, signs ({tri['det_diff_sign']}, "
                       f"{tri['det_sum_sign']}), trivial/sign dims "
                       f"({tri['trivial_dim']}, {tri['sign_dim']})")
    diag = doc.get("diagnostics")
    if diag is not None:
        out.append("diagnostics:")
        out.append(f"  Reidemeister zeta: {diag['reidemeister_zeta']}")
        out.append(f"  root-of-unity eigenvalue: "
                   f"{'yes' if diag['root_of_unity_eigenvalue'] else 'no'}")
        out.append(f"  virtually unipotent: "
                   f"{'yes' if diag['virtually_unipotent'] else 'no'}")
        out.append(f"  note: {diag['note']}")
    return "\n".join(out) + "\n"
