"""Per-source access rules.

A rule file is a JSON list of {principal, table, decision} objects with
fnmatch-style patterns.  First matching rule wins; when a source ships any
rule file the default flips to deny, otherwise everything is allowed.
Authorization is a pure function of the rule list and is checked before any
native call is made.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fnmatch import fnmatchcase
from pathlib import Path
from typing import List, Optional, Tuple

ALLOW = "allow"
DENY = "deny"


@dataclass(frozen=True)
class AccessRule:
    principal_pattern: str
    table_pattern: str
    decision: str  # "allow" | "deny"


class AccessPolicy:
    def __init__(self, rules: Optional[List[AccessRule]] = None):
        self.rules: Tuple[AccessRule, ...] = tuple(rules or [])
        self.default = DENY if rules is not None else ALLOW

    def authorize(self, principal: str, table: str, bare_name: str = "") -> str:
        for rule in self.rules:
            if not fnmatchcase(principal, rule.principal_pattern):
                continue
            if fnmatchcase(table, rule.table_pattern) or (
                bare_name and fnmatchcase(bare_name, rule.table_pattern)
            ):
                return rule.decision
        return self.default

    @classmethod
    def from_file(cls, path: Path) -> "AccessPolicy":
        entries = json.loads(Path(path).read_text())
        rules = [
            AccessRule(
                principal_pattern=e["principal"],
                table_pattern=e["table"],
                decision=e["decision"],
            )
            for e in entries
        ]
        return cls(rules)

    @classmethod
    def for_source_dir(cls, path: Path) -> "AccessPolicy":
        rule_file = Path(path) / "access.json"
        if rule_file.exists():
            return cls.from_file(rule_file)
        return cls(None)
