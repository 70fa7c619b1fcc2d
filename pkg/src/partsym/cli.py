"""Batch command-line front end.

Usage::

    partsym <command> [--in PATH] [--out PATH] [--depth D] [--window N]
                      [--strict-inverse BOOL] [--seed N]

The payload is a JSON document read from ``--in`` (or stdin); the answer is
a JSON document ``{"ok": ..., "result": ..., "witness": ...}`` written to
``--out`` (or stdout).  Exit status is 0 when ``ok`` is true, 1 when a check
came back false with a witness, and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from . import acceptance
from .clopen import (Clopen, carac_c_check, enumerate_base, fell_membership, hereditary_census,
                     is_hereditary_sublattice, lattice_op, tilde_truncated)
from .errors import InconsistencyError, MalformedQuery, PartsymError
from .homeo import (HCO_KINDS, PrefixMap, apply_point, hco_membership, image_clopen,
                    pm_compose, pm_invert)
from .lattice_iso import (TruncatedLatticeMap, decode, encode,
                          neighborhood_correspondence_witness, phi_homomorphism_witness)
from .pbij import (FiniteInverseSemigroup, PartialBijection, SequenceWindow, check_convergence,
                   compose, invert, is_idempotent, subbasic_membership, tau_pp_distance,
                   wagner_preston)
from .semilattice import FiniteSemilattice, compat_pairs, is_munn_member, munn_semigroup, \
    principal_ideal

# -- schemas ------------------------------------------------------------------

NAT = {"type": "integer", "minimum": 0}
WORD = {"type": "string", "pattern": "^[01]*$"}
PBIJ = {"type": "object", "required": ["entries"],
        "properties": {"entries": {"type": "array",
                                   "items": {"type": "array", "items": NAT,
                                             "minItems": 2, "maxItems": 2}}}}
CLOPEN = {"type": "object", "required": ["words"],
          "properties": {"words": {"type": "array", "items": WORD}}}
PREFIX_MAP = {"type": "object", "required": ["rules"],
              "properties": {"rules": {"type": "array",
                                       "items": {"type": "array", "items": WORD,
                                                 "minItems": 2, "maxItems": 2}}}}
TABLE = {"type": "array", "items": {"type": "array", "items": NAT}}
SEMILATTICE = {"type": "object", "required": ["meet"],
               "properties": {"size": NAT, "meet": TABLE}}
INV_SEMIGROUP = {"type": "object", "required": ["product", "inverse"],
                 "properties": {"size": NAT, "product": TABLE,
                                "inverse": {"type": "array", "items": NAT}}}
WINDOW = {"type": "object", "required": ["depth", "entries"],
          "properties": {"depth": NAT,
                         "entries": {"type": "array",
                                     "items": {"type": "array", "items": CLOPEN,
                                               "minItems": 2, "maxItems": 2}}}}


def _obj(required, **props):
    return {"type": "object", "required": list(required), "properties": props}


SCHEMAS = {
    "compose": _obj(["f", "g"], f=PBIJ, g=PBIJ),
    "invert": _obj(["f"], f=PBIJ),
    "idempotent": _obj(["f"], f=PBIJ),
    "nbhd": _obj(["f", "kind"], f=PBIJ, kind={"enum": ["v", "w1", "w2"]}, x=NAT, y=NAT),
    "converge": _obj(["terms", "limit"], terms={"type": "array", "items": PBIJ, "minItems": 1},
                     limit=PBIJ, window_bound=NAT, strict_inverse={"type": "boolean"}),
    "metric": _obj(["f", "g", "horizon"], f=PBIJ, g=PBIJ, horizon=NAT),
    "wagner-preston": INV_SEMIGROUP,
    "ideal": {**SEMILATTICE, "required": ["meet", "x"],
              "properties": {**SEMILATTICE["properties"], "x": NAT}},
    "compat": SEMILATTICE,
    "munn": SEMILATTICE,
    "munn-member": {**SEMILATTICE, "required": ["meet", "f"],
                    "properties": {**SEMILATTICE["properties"], "f": PBIJ}},
    "clopen-op": _obj(["kind", "a"], kind={"enum": ["union", "intersect", "complement", "minus"]},
                      a=CLOPEN, b=CLOPEN),
    "base": _obj([], depth=NAT),
    "tilde": _obj(["V"], V=CLOPEN, depth=NAT),
    "hereditary": _obj(["family"], family={"type": "array", "items": CLOPEN}, depth=NAT),
    "fell": _obj(["K", "kind", "V"], K=CLOPEN, kind={"enum": ["V_minus", "V_plus"]}, V=CLOPEN),
    "pm-compose": _obj(["f", "g"], f=PREFIX_MAP, g=PREFIX_MAP),
    "pm-invert": _obj(["f"], f=PREFIX_MAP),
    "pm-image": _obj(["h", "u"], h=PREFIX_MAP, u=CLOPEN),
    "pm-apply": _obj(["h", "x"], h=PREFIX_MAP, x=WORD),
    "hco": _obj(["h", "kind", "a"], h=PREFIX_MAP, kind={"enum": list(HCO_KINDS)},
                a=CLOPEN, b=CLOPEN),
    "encode": _obj(["h"], h=PREFIX_MAP, depth=NAT),
    "decode": WINDOW,
    "phi-check": _obj(["f", "g"], f=PREFIX_MAP, g=PREFIX_MAP, depth=NAT),
    "nbhd-identities": _obj(["o", "p", "sample"], o=CLOPEN, p=CLOPEN,
                            sample={"type": "array", "items": PREFIX_MAP}, depth=NAT),
    "census": _obj([], depth=NAT),
    "verify": _obj([]),
}


class Answer:
    def __init__(self, ok, result=None, witness=None):
        self.ok, self.result, self.witness = ok, result, witness

    def to_json(self) -> dict:
        doc = {"ok": self.ok, "result": self.result}
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc


def _depth(payload, opts, default=None):
    if opts.depth is not None:
        return opts.depth
    if "depth" in payload:
        return payload["depth"]
    if default is None:
        raise MalformedQuery("a depth is required (payload field or --depth)")
    return default


def _pb(doc):
    return PartialBijection.from_json(doc)


def _cl(doc):
    return Clopen.from_json(doc)


def _pm(doc):
    return PrefixMap.from_json(doc)


def _family(family):
    return sorted((c.to_json() for c in family), key=lambda d: (len(d["words"]), d["words"]))


# -- commands -----------------------------------------------------------------

def cmd_compose(p, o):
    return Answer(True, compose(_pb(p["f"]), _pb(p["g"])).to_json())


def cmd_invert(p, o):
    return Answer(True, invert(_pb(p["f"])).to_json())


def cmd_idempotent(p, o):
    return Answer(True, is_idempotent(_pb(p["f"])))


def cmd_nbhd(p, o):
    return Answer(True, subbasic_membership(_pb(p["f"]), p["kind"], p.get("x"), p.get("y")))


def cmd_converge(p, o):
    bound = o.window if o.window is not None else p.get("window_bound")
    if bound is None:
        raise MalformedQuery("a window bound is required (window_bound or --window)")
    strict = o.strict_inverse if o.strict_inverse is not None else p.get("strict_inverse", True)
    window = SequenceWindow([_pb(t) for t in p["terms"]], _pb(p["limit"]), bound)
    verdict = check_convergence(window, strict)
    witness = verdict.to_json().get("refutation_witness")
    return Answer(verdict.consistent, verdict.to_json(), witness)


def cmd_metric(p, o):
    value = tau_pp_distance(_pb(p["f"]), _pb(p["g"]), p["horizon"])
    return Answer(True, {"value": f"{value.numerator}/{value.denominator}", "float": float(value)})


def cmd_wagner_preston(p, o):
    S = FiniteInverseSemigroup.from_json(p)
    return Answer(True, {"images": [theta.to_json() for theta in wagner_preston(S)]})


def cmd_ideal(p, o):
    return Answer(True, sorted(principal_ideal(FiniteSemilattice.from_json(p), p["x"])))


def cmd_compat(p, o):
    return Answer(True, [list(pair) for pair in sorted(compat_pairs(FiniteSemilattice.from_json(p)))])


def cmd_munn(p, o):
    elements = munn_semigroup(FiniteSemilattice.from_json(p))
    return Answer(True, {"count": len(elements), "elements": [m.to_json() for m in elements]})


def cmd_munn_member(p, o):
    return Answer(True, is_munn_member(FiniteSemilattice.from_json(p), _pb(p["f"])))


def cmd_clopen_op(p, o):
    b = _cl(p["b"]) if "b" in p else None
    return Answer(True, lattice_op(p["kind"], _cl(p["a"]), b).to_json())


def cmd_base(p, o):
    return Answer(True, [c.to_json() for c in enumerate_base(_depth(p, o))])


def cmd_tilde(p, o):
    return Answer(True, _family(tilde_truncated(_cl(p["V"]), _depth(p, o))))


def cmd_hereditary(p, o):
    family = [_cl(c) for c in p["family"]]
    d = _depth(p, o)
    return Answer(True, {"hereditary": is_hereditary_sublattice(family, d),
                         "carac_c": carac_c_check(family, d)})


def cmd_fell(p, o):
    return Answer(True, fell_membership(_cl(p["K"]), p["kind"], _cl(p["V"])))


def cmd_pm_compose(p, o):
    return Answer(True, pm_compose(_pm(p["f"]), _pm(p["g"])).to_json())


def cmd_pm_invert(p, o):
    return Answer(True, pm_invert(_pm(p["f"])).to_json())


def cmd_pm_image(p, o):
    return Answer(True, image_clopen(_pm(p["h"]), _cl(p["u"])).to_json())


def cmd_pm_apply(p, o):
    return Answer(True, apply_point(_pm(p["h"]), p["x"]).to_json())


def cmd_hco(p, o):
    b = _cl(p["b"]) if "b" in p else None
    return Answer(True, hco_membership(_pm(p["h"]), p["kind"], _cl(p["a"]), b))


def cmd_encode(p, o):
    return Answer(True, encode(_pm(p["h"]), _depth(p, o)).to_json())


def cmd_decode(p, o):
    window = TruncatedLatticeMap.from_json(p)
    try:
        return Answer(True, decode(window).to_json())
    except InconsistencyError as exc:
        witness = exc.witness.to_json() if isinstance(exc.witness, Clopen) else None
        return Answer(False, str(exc), witness)


def cmd_phi_check(p, o):
    witness = phi_homomorphism_witness(_pm(p["f"]), _pm(p["g"]), _depth(p, o))
    if witness is None:
        return Answer(True, True)
    return Answer(False, False, witness.to_json())


def cmd_nbhd_identities(p, o):
    found = neighborhood_correspondence_witness(_cl(p["o"]), _cl(p["p"]),
                                                [_pm(h) for h in p["sample"]], _depth(p, o))
    if found is None:
        return Answer(True, True)
    h, clause = found
    return Answer(False, False, {"map": h.to_json(), "clause": clause})


def cmd_census(p, o):
    d = _depth(p, o)
    families = hereditary_census(d)
    return Answer(True, {"count": len(families)})


def cmd_verify(p, o):
    seed = o.seed if o.seed is not None else acceptance.DEFAULT_SEED
    results = acceptance.run_all(seed)
    print(acceptance.format_report(results), file=sys.stderr)
    failed = [r.number for r in results if not r.passed]
    doc = [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
           for r in results]
    return Answer(not failed, {"seed": seed, "criteria": doc}, failed or None)


COMMANDS = {
    "compose": cmd_compose,
    "invert": cmd_invert,
    "idempotent": cmd_idempotent,
    "nbhd": cmd_nbhd,
    "converge": cmd_converge,
    "metric": cmd_metric,
    "wagner-preston": cmd_wagner_preston,
    "ideal": cmd_ideal,
    "compat": cmd_compat,
    "munn": cmd_munn,
    "munn-member": cmd_munn_member,
    "clopen-op": cmd_clopen_op,
    "base": cmd_base,
    "tilde": cmd_tilde,
    "hereditary": cmd_hereditary,
    "fell": cmd_fell,
    "pm-compose": cmd_pm_compose,
    "pm-invert": cmd_pm_invert,
    "pm-image": cmd_pm_image,
    "pm-apply": cmd_pm_apply,
    "hco": cmd_hco,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "phi-check": cmd_phi_check,
    "nbhd-identities": cmd_nbhd_identities,
    "census": cmd_census,
    "verify": cmd_verify,
}


# -- driver -------------------------------------------------------------------

def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partsym", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--in", dest="inp", help="input JSON file (default: stdin)")
    parser.add_argument("--out", help="output JSON file (default: stdout)")
    parser.add_argument("--depth", type=int)
    parser.add_argument("--window", type=int, help="window bound for converge")
    parser.add_argument("--strict-inverse", type=_bool, default=None)
    parser.add_argument("--seed", type=int, help="seed for the sampled suites of verify")
    return parser


def _json_path(error) -> str:
    path = "$"
    for part in error.absolute_path:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def run(command: str, payload, opts) -> tuple:
    """Execute one command; return ``(document, exit_status)``."""
    schema = SCHEMAS[command]
    try:
        jsonschema.validate(payload, schema)
    except jsonschema.ValidationError as exc:
        return {"ok": False, "error": {"kind": "schema", "path": _json_path(exc),
                                       "message": exc.message}}, 2
    try:
        answer = COMMANDS[command](payload, opts)
    except (MalformedQuery, PartsymError) as exc:
        return {"ok": False, "error": {"kind": type(exc).__name__, "message": str(exc)}}, 2
    return answer.to_json(), 0 if answer.ok else 1


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    if opts.inp:
        with open(opts.inp) as fh:
            text = fh.read()
    elif sys.stdin is not None and not sys.stdin.isatty():
        text = sys.stdin.read()
    else:
        text = ""
    try:
        payload = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        doc, status = {"ok": False, "error": {"kind": "json", "path": "$",
                                              "message": str(exc)}}, 2
    else:
        doc, status = run(opts.command, payload, opts)
    out = dumps(doc)
    if opts.out:
        with open(opts.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
