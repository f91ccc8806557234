"""Per-axiom verdicts with first-found witnesses."""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    labels: tuple = ()
    detail: str = ""

    def to_dict(self):
        d = {"axiom": self.axiom, "witness": list(self.witness)}
        if self.labels:
            d["labels"] = list(self.labels)
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    """Outcome of checking a list of named axioms.

    Every axiom that was evaluated is listed in ``axioms``; an axiom fails
    iff a violation with that name is recorded. Witnesses are the first ones
    found in lexicographic scan order.
    """

    subject: str
    axioms: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    def check(self, axiom, witness=None, labels=(), detail=""):
        """Record that ``axiom`` was evaluated; a non-None witness marks failure."""
        if axiom not in self.axioms:
            self.axioms.append(axiom)
        if witness is not None:
            self.violations.append(
                Violation(axiom, tuple(witness), tuple(labels), detail)
            )
        return witness is None

    @property
    def ok(self):
        return not self.violations

    def holds(self, axiom):
        if axiom not in self.axioms:
            raise KeyError(f"{axiom!r} was not checked")
        return all(v.axiom != axiom for v in self.violations)

    def witness(self, axiom) -> Optional[tuple]:
        for v in self.violations:
            if v.axiom == axiom:
                return v.witness
        return None

    def verdicts(self):
        return {a: self.holds(a) for a in self.axioms}

    def merge(self, other, prefix=""):
        for a in other.axioms:
            self.check(prefix + a)
        for v in other.violations:
            self.violations.append(
                Violation(prefix + v.axiom, v.witness, v.labels, v.detail)
            )
        return self

    def to_dict(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "verdicts": self.verdicts(),
            "violations": [v.to_dict() for v in self.violations],
        }

    def __str__(self):
        lines = [f"{self.subject}: {'ok' if self.ok else 'FAILED'}"]
        for a in self.axioms:
            w = self.witness(a)
            lines.append(f"  {a}: {'pass' if w is None else 'fail at ' + str(w)}")
        return "\n".join(lines)


class Check(NamedTuple):
    """Two independently computed sides of a claimed equivalence."""

    computed: bool
    criterion: bool

    @property
    def agree(self):
        return self.computed == self.criterion

    def to_dict(self):
        return {"computed": self.computed, "criterion": self.criterion}
