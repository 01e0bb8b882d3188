"""Rows emitted by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class CheckReport:
    kind: str
    instance: str
    lhs: str
    rhs: str
    ok: bool
    detail: str = ""

    def row(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return "\t".join([self.kind, self.instance, self.lhs, self.rhs, status, self.detail])


HEADER = "identity\tinstance\tlhs\trhs\tstatus\tdetail"
