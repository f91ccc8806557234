"""Command line front end: ``qmon <command> ...``.

Exit codes: 0 every verdict holds, 1 a mathematical check failed,
2 input error, 3 enumeration budget exceeded.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import config
from .dsl import DSLError, load
from .errors import AxiomError, BudgetExceeded, QmonError, StructuralError
from .monoid import MonoidAction, is_group, validate_action, validate_monoid
from .preord2 import example_N_Ndot, example_projection_preorder
from .quantale import validate_quantale
from .report import Report
from .schreier import (check_enriched_action,
                       enumerate_enrichments, extension_roundtrip_check,
                       extension_from_action, is_U_schreier_extension,
                       prop1_bounds_check, roundtrip_check)
from .semidirect import (corollary2_group_lex, corollary3_group_wlex, lemma1_lex_eq_wlex,
                         lemma3_wlex_transitive, lemma4_lex_transitive,
                         lex_transitive_group_criterion, pi1_lemma, prop2_wlex_vmonoid,
                         prop3_tensor_vmonoid, prop6_lex_vmonoid, standard_candidates)
from .vcat import reflexivity_witness, transitivity_witness
from .vmon import VMonoid, check_M_axioms, is_vmon_star, verify_prop4, vmonoid_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class CommandReport:
    command: str
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return all(self.verdicts.values())

    def add_report(self, report, carriers=None, prefix=""):
        carriers = carriers or {}
        for axiom, holds in report.verdicts().items():
            self.verdicts[prefix + axiom] = holds
        for v in report.violations:
            key = prefix + v.axiom
            if key in self.witnesses:
                continue
            self.witnesses[key] = {
                "indices": _plain(v.witness),
                "names": _label(v.witness, carriers.get(v.axiom)),
            }
            if v.detail:
                self.witnesses[key]["detail"] = v.detail

    def add_check(self, name, chk):
        self.verdicts[name] = chk.agree
        self.details[name] = chk.to_dict()

    def to_dict(self):
        return {"command": self.command, "ok": self.ok, "verdicts": self.verdicts,
                "witnesses": self.witnesses, "counts": self.counts,
                "details": self.details, "notes": self.notes,
                "seconds": round(self.seconds, 6)}

    def to_text(self):
        lines = [f"{self.command}: {'ok' if self.ok else 'FAILED'}"]
        for k, v in self.verdicts.items():
            line = f"  {'pass' if v else 'FAIL'}  {k}"
            if k in self.details:
                line += f"  {self.details[k]}"
            if k in self.witnesses:
                line += f"  witness {self.witnesses[k]['names']}"
            lines.append(line)
        for k, v in self.counts.items():
            lines.append(f"  {k}: {v}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  ({self.seconds:.3f} s)")
        return "\n".join(lines)


def _plain(w):
    if isinstance(w, (tuple, list)):
        return [_plain(v) for v in w]
    return int(w) if isinstance(w, int) or hasattr(w, "__index__") else w


def _label(w, carrier):
    """Replace indices by element names; ``carrier`` gives one name list per
    position (a list of names, or a tuple of carriers for a pair)."""
    if carrier is None:
        return _plain(w)
    if isinstance(carrier, list):
        if isinstance(w, (tuple, list)):
            return [_label(v, carrier) for v in w]
        return carrier[w] if isinstance(w, int) and 0 <= w < len(carrier) else w
    if isinstance(carrier, tuple):
        if not isinstance(w, (tuple, list)):
            return w
        return [_label(v, s) for v, s in zip(w, carrier)] + [_plain(v) for v in w[len(carrier):]]
    return _plain(w)


def _carrier_names(doc, name, obj):
    if isinstance(obj, VMonoid):
        return list(obj.elements)
    d = doc.definitions.get(name)
    if d is not None and d.kind == "vrelation":
        on = d.clause("on")
        if on is not None:
            return list(doc.monoid(on.groups[0][0]).elements)
        return [t for g in d.clause("elements").groups for t in g]
    return [str(i) for i in range(obj.n)]


def _pair_names(X, Y):
    return [f"({x},{y})" for x in X.elements for y in Y.elements]


# commands

def cmd_check(doc, name):
    obj = doc.get(name)
    kind = doc.kind(name)
    rep = CommandReport(f"check {name}")
    if kind == "quantale":
        rep.add_report(validate_quantale(obj), {a: list(obj.elements) for a in
                                                validate_quantale(obj).axioms})
        rep.counts["pointed"] = obj.is_pointed
    elif kind == "monoid":
        r = validate_monoid(obj)
        rep.add_report(r, {a: list(obj.elements) for a in r.axioms})
        rep.counts["group"] = is_group(obj)
    elif kind == "vrelation":
        names = _carrier_names(doc, name, obj)
        r = Report("V-category")
        r.check("reflexivity", reflexivity_witness(obj))
        r.check("transitivity", transitivity_witness(obj))
        rep.add_report(r, {a: names for a in r.axioms})
    elif kind == "vmonoid":
        names = list(obj.elements)
        r = validate_monoid(obj.monoid)
        rep.add_report(r, {a: names for a in r.axioms}, prefix="monoid ")
        for via in ("bruteforce", "translations"):
            r = vmonoid_report(obj.monoid, obj.relation, via)
            rep.add_report(r, {a: names for a in r.axioms})
        rep.counts["cone-determined"] = is_vmon_star(obj)
    elif kind == "action":
        Y, X = list(obj.acting.elements), list(obj.acted.elements)
        rep.add_report(validate_action(obj), {"unit": (X,), "composition": (Y, Y, X),
                                              "zero": (Y,), "additivity": (Y, X, X)})
    elif kind == "cone":
        m, P = obj
        names = list(m.elements)
        r = check_M_axioms(m, P)
        rep.add_report(r, {a: names for a in r.axioms})
        rep.add_report(verify_prop4(m, P), prefix="equivalence: ")
    elif kind == "enriched_action":
        X, Y, ea = obj
        xn, yn = list(X.elements), list(Y.elements)
        rep.add_report(validate_action(ea.action), prefix="action ")
        rep.add_report(check_enriched_action(X, Y, ea),
                       {"E0": (xn, yn), "E1": (yn,), "E2": (xn,),
                        "E3": ((xn, yn), (xn, yn)), "E4": ((xn, yn), (xn, yn))})
    elif kind == "extension":
        X, Z, Y = list(obj.X.elements), list(obj.Z.elements), list(obj.Y.elements)
        rep.add_report(is_U_schreier_extension(obj),
                       {"split": (Y,), "kernel carrier": (Z,), "S1": (Z, Z), "S2": (X, X), "S3": (Y, Y),
                        "Schreier": (Z,)})
    return rep


def _triple(doc, xname, yname, aname):
    X, Y, alpha = doc.get(xname), doc.get(yname), doc.get(aname)
    if not (isinstance(X, VMonoid) and isinstance(Y, VMonoid)):
        raise StructuralError("X and Y must name vmonoid definitions")
    if not isinstance(alpha, MonoidAction):
        raise StructuralError(f"{aname!r} is not an action")
    if alpha.acting != Y.monoid or alpha.acted != X.monoid:
        raise StructuralError(f"{aname!r} does not act by {yname} on {xname}")
    for nm, m in ((xname, X), (yname, Y)):
        if not vmonoid_report(m.monoid, m.relation).ok:
            raise AxiomError(f"{nm} is not a V-monoid")
    r = validate_action(alpha)
    if not r.ok:
        raise AxiomError(f"{aname} is not a monoid action", r)
    return X, Y, alpha


def cmd_enumerate(doc, xname, yname, aname, budget=None):
    X, Y, alpha = _triple(doc, xname, yname, aname)
    rep = CommandReport(f"enumerate {xname} {yname} {aname}")
    found = enumerate_enrichments(X, Y, alpha, budget=budget, verify=True)
    rep.verdicts["every enrichment gives a U-Schreier extension"] = True
    rep.counts["enrichments"] = len(found)
    names = _pair_names(X, Y)
    q = X.q
    rep.details["enrichments"] = [
        {"matrix": c.matrix.tolist(),
         "labels": [[q.elements[v] for v in row] for row in c.matrix.tolist()]}
        for c in found]
    rep.details["carrier"] = names
    cands = standard_candidates(X, Y, alpha)
    for tag, cand in cands.items():
        rep.counts[f"{tag} included"] = cand.relation in found
    return rep


def cmd_criteria(doc, xname, yname, aname):
    X, Y, alpha = _triple(doc, xname, yname, aname)
    rep = CommandReport(f"criteria {xname} {yname} {aname}")
    if not X.q.is_pointed:
        raise AxiomError("these criteria assume a pointed quantale (unit = top)")
    rep.add_check("lemma1", lemma1_lex_eq_wlex(X, Y))
    rep.add_check("lemma3", lemma3_wlex_transitive(X, Y))
    rep.add_check("lemma4", lemma4_lex_transitive(X, Y))
    for tag, cand in standard_candidates(X, Y, alpha).items():
        rep.add_check(f"prop1[{tag}]", prop1_bounds_check(X, Y, alpha, cand.relation))
        rep.add_check(f"pi1[{tag}]", pi1_lemma(X, Y, alpha, cand.relation))
    rep.add_check("prop2", prop2_wlex_vmonoid(X, Y, alpha))
    rep.add_check("prop3", prop3_tensor_vmonoid(X, Y, alpha))
    rep.add_check("prop6", prop6_lex_vmonoid(X, Y, alpha))
    if is_group(Y.monoid):
        rep.add_check("corollary3", corollary3_group_wlex(X, Y, alpha))
        rep.add_check("corollary2", corollary2_group_lex(X, Y, alpha))
        if is_group(X.monoid):
            lt = lex_transitive_group_criterion(X, Y)
            l4 = lemma4_lex_transitive(X, Y)
            rep.verdicts["group form of lex transitivity"] = lt == l4.computed
            rep.details["group form of lex transitivity"] = {"group_form": lt,
                                                             "computed": l4.computed}
    return rep


def cmd_roundtrip(doc, name):
    if doc.kind(name) != "enriched_action":
        raise StructuralError(f"{name!r} is not an enriched_action")
    X, Y, ea = doc.get(name)
    rep = CommandReport(f"roundtrip {name}")
    r = roundtrip_check(X, Y, ea)
    rep.add_report(r)
    if r.ok:
        ext = extension_from_action(X, Y, ea)
        rep.add_report(extension_roundtrip_check(ext))
    return rep


def cmd_demo(which, k=4):
    if which == "n-ndot":
        demo = example_N_Ndot(k)
    elif which == "projection":
        demo = example_projection_preorder()
    else:
        raise StructuralError(f"unknown demo {which!r}")
    rep = CommandReport(f"demo {which}")
    for c in demo.claims:
        rep.verdicts[c.name] = bool(c.holds)
        if c.witness is not None:
            rep.witnesses[c.name] = {"indices": c.witness, "names": c.witness}
        if c.detail:
            rep.details[c.name] = c.detail
    return rep


def run(command, document=None, options=None):
    """Run a command against a loaded document; returns a CommandReport."""
    o = dict(options or {})
    args = list(o.get("args", ()))
    t0 = time.perf_counter()
    if command == "check":
        rep = cmd_check(document, *args)
    elif command == "enumerate":
        rep = cmd_enumerate(document, *args, budget=o.get("budget"))
    elif command == "criteria":
        rep = cmd_criteria(document, *args)
    elif command == "roundtrip":
        rep = cmd_roundtrip(document, *args)
    elif command == "demo":
        rep = cmd_demo(*args, k=o.get("k", 4))
    else:
        raise StructuralError(f"unknown command {command!r}")
    rep.seconds = time.perf_counter() - t0
    if document is not None:
        rep.notes.extend(document.notes)
    return rep


def build_parser():
    ap = argparse.ArgumentParser(prog="qmon", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="validate a definition")
    p.add_argument("file")
    p.add_argument("name")
    for cmd, help_ in (("enumerate", "all enrichments of a semidirect product"),
                       ("criteria", "evaluate every characterization side by side")):
        p = sub.add_parser(cmd, help=help_)
        p.add_argument("file")
        p.add_argument("X")
        p.add_argument("Y")
        p.add_argument("action")
        if cmd == "enumerate":
            p.add_argument("--budget", type=int, default=None,
                           help=f"candidate cap (default {config.ENUMERATION_BUDGET})")
    p = sub.add_parser("roundtrip", help="action -> extension -> action")
    p.add_argument("file")
    p.add_argument("name")
    p = sub.add_parser("demo", help="worked examples")
    p.add_argument("which", choices=("n-ndot", "projection"))
    p.add_argument("--k", type=int, default=4)
    for p in sub.choices.values():
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return ap


def main(argv=None):
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        if ns.command == "demo":
            rep = run("demo", None, {"args": [ns.which], "k": ns.k})
        else:
            doc = load(ns.file)
            args = {"check": ["name"], "roundtrip": ["name"]}.get(
                ns.command, ["X", "Y", "action"])
            opts = {"args": [getattr(ns, a) for a in args]}
            if ns.command == "enumerate":
                opts["budget"] = ns.budget
            rep = run(ns.command, doc, opts)
    except BudgetExceeded as e:
        _error(ns, "budget", str(e), cardinality=e.cardinality, budget=e.budget)
        return EXIT_BUDGET
    except (DSLError, StructuralError, AxiomError, QmonError, OSError, ValueError) as e:
        extra = {}
        if isinstance(e, DSLError):
            extra = {"class": type(e).__name__, "line": e.line, "col": e.col,
                     "expected": list(e.expected)}
        _error(ns, "input", str(e), **extra)
        return EXIT_INPUT
    if getattr(ns, "json", False):
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAIL


def _error(ns, kind, message, **extra):
    if getattr(ns, "json", False):
        print(json.dumps({"error": kind, "message": message, **extra}, indent=2))
    else:
        print(f"qmon: {kind} error: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
