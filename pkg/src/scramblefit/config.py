"""Model configuration: variables, membership functions, and rules as data.

The rule base ships in a JSON file rather than in code so contested rule
rows stay auditable and swappable. A config round-trips losslessly:
``from_dict(to_dict(c))`` rebuilds an equal config, and ``to_dict`` of that
rebuild equals the original dict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .fuzzy import FisNode, FuzzyRule, LinguisticVariable, MembershipFunction, make_mf

DEFAULT_MODEL_RESOURCE = "default_model.json"


@dataclass(frozen=True)
class RuleSpec:
    antecedent: tuple[tuple[str, str], ...]
    consequent_label: str
    note: str | None = None


@dataclass(frozen=True)
class NodeSpec:
    inputs: tuple[str, ...]
    output: str
    rules: tuple[RuleSpec, ...]


@dataclass(frozen=True)
class ModelConfig:
    version: str
    variables: dict[str, LinguisticVariable]
    nodes: dict[str, NodeSpec]
    tunable: tuple[str, ...]
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for name, spec in self.nodes.items():
            for var in (*spec.inputs, spec.output):
                if var not in self.variables:
                    raise ConfigError(f"node {name!r} references unknown variable {var!r}")
        for var in self.tunable:
            if var not in self.variables:
                raise ConfigError(f"tunable list references unknown variable {var!r}")

    # -- construction ------------------------------------------------------

    def build_nodes(self) -> dict[str, FisNode]:
        """Instantiate FIS nodes; variables are shared objects across nodes."""
        built = {}
        for name, spec in self.nodes.items():
            rules = [
                FuzzyRule(r.antecedent, (spec.output, r.consequent_label)) for r in spec.rules
            ]
            built[name] = FisNode(
                name,
                [self.variables[v] for v in spec.inputs],
                self.variables[spec.output],
                rules,
            )
        return built

    # -- serialization -------------------------------------------------------

    @staticmethod
    def from_dict(d: dict) -> "ModelConfig":
        try:
            variables = {}
            for name, vd in d["variables"].items():
                lo, hi = vd["universe"]
                labels = tuple(
                    (label, make_mf(mf["form"], mf["params"])) for label, mf in vd["labels"]
                )
                variables[name] = LinguisticVariable(name, float(lo), float(hi), labels)
            nodes = {}
            for name, nd in d["nodes"].items():
                rules = tuple(
                    RuleSpec(
                        antecedent=tuple((v, l) for v, l in rd["if"].items()),
                        consequent_label=rd["then"],
                        note=rd.get("note"),
                    )
                    for rd in nd["rules"]
                )
                nodes[name] = NodeSpec(tuple(nd["inputs"]), nd["output"], rules)
            return ModelConfig(
                version=d["version"],
                variables=variables,
                nodes=nodes,
                tunable=tuple(d["tunable"]),
                notes=tuple(d.get("notes", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"malformed model config: {exc}") from exc

    def to_dict(self) -> dict:
        d: dict = {"version": self.version}
        if self.notes:
            d["notes"] = list(self.notes)
        d["variables"] = {
            name: {
                "universe": [var.lo, var.hi],
                "labels": [[label, {"form": mf.form, "params": list(mf.params)}] for label, mf in var.labels],
            }
            for name, var in self.variables.items()
        }
        d["nodes"] = {}
        for name, spec in self.nodes.items():
            rules = []
            for r in spec.rules:
                rd: dict = {"if": {v: l for v, l in r.antecedent}, "then": r.consequent_label}
                if r.note is not None:
                    rd["note"] = r.note
                rules.append(rd)
            d["nodes"][name] = {"inputs": list(spec.inputs), "output": spec.output, "rules": rules}
        d["tunable"] = list(self.tunable)
        return d

    @staticmethod
    def load(path: str | Path) -> "ModelConfig":
        with open(path, encoding="utf-8") as fh:
            return ModelConfig.from_dict(json.load(fh))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    @staticmethod
    def default() -> "ModelConfig":
        text = resources.files("scramblefit").joinpath(f"data/{DEFAULT_MODEL_RESOURCE}").read_text("utf-8")
        return ModelConfig.from_dict(json.loads(text))

    def replace_mf(self, variable: str, label: str, mf: MembershipFunction) -> "ModelConfig":
        """New config with one membership function swapped out."""
        var = self.variables[variable]
        labels = tuple((n, mf if n == label else f) for n, f in var.labels)
        if label not in var.label_names:
            raise ConfigError(f"variable {variable!r} has no label {label!r}")
        variables = dict(self.variables)
        variables[variable] = LinguisticVariable(var.name, var.lo, var.hi, labels)
        return ModelConfig(self.version, variables, self.nodes, self.tunable, self.notes)
