"""Defining-sequence algebra, index certificates, and classifier verdicts.

A defining sequence lists the link type of each consecutive pair of nested
solid tori: a finite prefix plus a periodic tail (an empty tail means a
finite truncation).  Only the combinatorial content lives here: geometric
indices multiply along the chain, clasped links force interlacing growth,
and tube chains witness exhaustion by product neighborhoods.

Every decision is emitted as a certificate whose evidence replays: running
the recorded query again reproduces the verdict and evidence bit for bit.
Verdicts are honest; sequences outside the decidable families come back
UNKNOWN rather than guessed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .errors import (
    InvalidInputError,
    InvalidSequenceError,
    PropertyViolation,
    TraceRefusedError,
)
from .interlacing import InterlaceBound, mcmillan_bound
from .tubes import build_induction

CERTIFICATE_SCHEMA = "genusone.certificate/1"


class LinkKind(str, Enum):
    WHITEHEAD = "whitehead"
    BING = "bing"
    GABAI = "gabai"
    MCMILLAN = "mcmillan"


_ORDERED_KINDS = (LinkKind.GABAI, LinkKind.MCMILLAN)


@dataclass(frozen=True)
class Link:
    """One nesting step: the link type of (inner torus, outer torus)."""

    kind: LinkKind
    order: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.kind, LinkKind):
            raise InvalidInputError(f"unknown link kind: {self.kind!r}")
        if not isinstance(self.order, int) or self.order < 1:
            raise InvalidInputError(f"link order must be a positive integer: {self.order!r}")
        if self.kind not in _ORDERED_KINDS and self.order != 1:
            raise InvalidInputError(f"{self.kind.value} links carry no order")

    def to_record(self) -> dict:
        return {"type": self.kind.value, "order": self.order}

    @staticmethod
    def from_record(record: dict) -> "Link":
        if not isinstance(record, dict) or "type" not in record:
            raise InvalidInputError(f"link record needs a 'type' field: {record!r}")
        try:
            kind = LinkKind(record["type"])
        except ValueError:
            raise InvalidInputError(f"unknown link type: {record['type']!r}")
        order = record.get("order", 1)
        if not isinstance(order, int):
            raise InvalidInputError(f"link order must be an integer: {order!r}")
        return Link(kind, order)


def whitehead() -> Link:
    return Link(LinkKind.WHITEHEAD)


def bing() -> Link:
    return Link(LinkKind.BING)


def gabai(order: int) -> Link:
    return Link(LinkKind.GABAI, order)


def mcmillan(order: int) -> Link:
    return Link(LinkKind.MCMILLAN, order)


def link_index(link: Link) -> int:
    """Geometric index of the inner torus in the outer one; always even."""
    if link.kind in _ORDERED_KINDS:
        return 2 * link.order
    return 2


@dataclass(frozen=True)
class DefiningSequence:
    prefix: tuple[Link, ...]
    period: tuple[Link, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        for link in self.prefix + self.period:
            if not isinstance(link, Link):
                raise InvalidInputError(f"expected Link, got {type(link).__name__}")

    @property
    def eventually_periodic(self) -> bool:
        return bool(self.period)

    def link(self, i: int) -> Link:
        """The link describing the nesting (T_{i-1}, T_i); i is 1-based."""
        if not isinstance(i, int) or i < 1:
            raise InvalidInputError(f"link levels are 1-based integers, got {i!r}")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        if not self.period:
            raise InvalidSequenceError(
                f"finite truncation has only {len(self.prefix)} links, asked for {i}"
            )
        return self.period[(i - len(self.prefix) - 1) % len(self.period)]

    def links_up_to(self, horizon: int) -> list[Link]:
        return [self.link(i) for i in range(1, horizon + 1)]

    def all_links(self) -> tuple[Link, ...]:
        return self.prefix + self.period

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "prefix": [l.to_record() for l in self.prefix],
            "period": [l.to_record() for l in self.period],
        }

    @staticmethod
    def from_doc(doc: dict) -> "DefiningSequence":
        if not isinstance(doc, dict):
            raise InvalidInputError("sequence document must be an object")
        prefix = doc.get("prefix", [])
        period = doc.get("period", [])
        if not isinstance(prefix, list) or not isinstance(period, list):
            raise InvalidInputError("prefix and period must be lists of link records")
        return DefiningSequence(
            prefix=tuple(Link.from_record(r) for r in prefix),
            period=tuple(Link.from_record(r) for r in period),
            name=str(doc.get("name", "")),
        )


def index_between(seq: DefiningSequence, i: int, j: int) -> int:
    """Geometric index of torus i inside torus j: the product over the links."""
    if not isinstance(i, int) or not isinstance(j, int) or not 0 <= i < j:
        raise InvalidInputError(f"need integer levels 0 <= i < j, got {i!r}, {j!r}")
    product = 1
    for level in range(i + 1, j + 1):
        product *= link_index(seq.link(level))
    return product


def parity_check(seq: DefiningSequence, index_fn=link_index) -> bool:
    """Contractible nesting steps have even index; flags corrupted data."""
    return all(index_fn(link) % 2 == 0 for link in seq.all_links())


@dataclass(frozen=True)
class IndexLedger:
    """Two-sided index accounting for an order-n clasped tube link.

    The two meridional disks each meet the core ``2n`` times (upper bound);
    cutting along them decomposes the link into ``n - 1`` doubly clasped
    pairs and one singly clasped pair, each of index 2 (lower bound).
    """

    n: int
    disk_hits: int
    bing_count: int
    whitehead_count: int
    lower: int
    upper: int

    def to_doc(self) -> dict:
        return {
            "order": self.n,
            "disk_hits": self.disk_hits,
            "bing_count": self.bing_count,
            "whitehead_count": self.whitehead_count,
            "lower": self.lower,
            "upper": self.upper,
        }


def gabai_index_certificate(n: int) -> IndexLedger:
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"order must be a positive integer, got {n!r}")
    ledger = IndexLedger(
        n=n,
        disk_hits=2 * n,
        bing_count=n - 1,
        whitehead_count=1,
        lower=2 * (n - 1) + 2,
        upper=2 * n,
    )
    if ledger.lower != ledger.upper or ledger.lower != 2 * n:
        raise PropertyViolation(f"index ledger mismatch at order {n}")
    return ledger


def divergence_trace(orders, start: int = 1) -> list[InterlaceBound]:
    """Iterate the clasped-pass lower bound along a chain of orders.

    Every order must be at least 2: only then does each step strictly grow
    the bound, which is what makes the trace a contradiction engine.
    """
    orders = list(orders)
    for n in orders:
        if not isinstance(n, int) or n < 2:
            raise TraceRefusedError(f"divergence traces need every order >= 2, got {n!r}")
    if not isinstance(start, int) or start < 1:
        raise InvalidInputError(f"starting interlacing must be a positive int: {start!r}")
    trace: list[InterlaceBound] = []
    k = start
    for n in orders:
        bound = mcmillan_bound(k, n)
        if bound.value <= k:
            raise PropertyViolation("divergence step failed to grow")
        trace.append(bound)
        k = bound.value
    return trace


# -- certificates -------------------------------------------------------------


class Verdict(str, Enum):
    DOUBLE3SPACE_YES = "DOUBLE3SPACE_YES"
    DOUBLE3SPACE_NO = "DOUBLE3SPACE_NO"
    UNKNOWN = "UNKNOWN"
    DISTINCT = "DISTINCT"
    INDISTINGUISHABLE_AT_HORIZON = "INDISTINGUISHABLE_AT_HORIZON"


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    query: dict
    evidence: dict

    def to_doc(self) -> dict:
        return {
            "schema": CERTIFICATE_SCHEMA,
            "verdict": self.verdict.value,
            "query": self.query,
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_doc(doc: dict) -> "Certificate":
        if not isinstance(doc, dict) or doc.get("schema") != CERTIFICATE_SCHEMA:
            raise InvalidInputError("not a certificate document")
        try:
            verdict = Verdict(doc["verdict"])
        except (KeyError, ValueError):
            raise InvalidInputError(f"bad verdict in certificate: {doc.get('verdict')!r}")
        return Certificate(verdict, doc.get("query", {}), doc.get("evidence", {}))


def _require_periodic(seq: DefiningSequence) -> None:
    if not seq.eventually_periodic:
        raise InvalidSequenceError("operation needs an eventually periodic sequence")


def classify_double3(seq: DefiningSequence, depth: int, horizon: int) -> Certificate:
    """Decide the double 3-space property for the two decidable families.

    All clasped-tube links: YES, witnessed by a verified nesting chain of
    pulled-back outer arcs over ``horizon`` levels.  All winding links of
    order at least 2: NO, witnessed by a divergence trace that outruns the
    horizon.  Anything else is honestly UNKNOWN.
    """
    _require_periodic(seq)
    if not isinstance(horizon, int) or horizon < 1:
        raise InvalidInputError(f"horizon must be a positive integer, got {horizon!r}")
    if not isinstance(depth, int) or depth < 2:
        raise InvalidInputError(f"depth must be an integer >= 2, got {depth!r}")
    query = {
        "op": "classify",
        "sequence": seq.to_doc(),
        "depth": depth,
        "horizon": horizon,
    }
    kinds = {link.kind for link in seq.all_links()}
    orders = [link.order for link in seq.links_up_to(horizon)]

    if kinds == {LinkKind.GABAI}:
        _, report = build_induction(orders, depth)
        if not report.passed:
            raise PropertyViolation("nesting chain failed verification")
        evidence = {
            "kind": "exhaustion",
            "orders": orders,
            "depth": depth,
            "horizon": horizon,
            "steps": [s.to_doc() for s in report.steps],
            "v0_chain": [s.to_records() for s in report.v0_chain],
        }
        return Certificate(Verdict.DOUBLE3SPACE_YES, query, evidence)

    if kinds == {LinkKind.MCMILLAN} and all(
        link.order >= 2 for link in seq.all_links()
    ):
        trace = divergence_trace(orders)
        final = trace[-1].value
        if final <= horizon:
            raise PropertyViolation("divergence trace failed to outrun the horizon")
        evidence = {
            "kind": "divergence",
            "orders": orders,
            "start": 1,
            "horizon": horizon,
            "trace": [
                {"level": i, "order": n, "bound": b.value}
                for i, (n, b) in enumerate(zip(orders, trace), start=1)
            ],
            "final_bound": final,
            "exceeds_horizon": True,
        }
        return Certificate(Verdict.DOUBLE3SPACE_NO, query, evidence)

    if kinds == {LinkKind.MCMILLAN}:
        reason = "winding links of order 1 fall outside the decidable family"
    elif kinds <= {LinkKind.GABAI, LinkKind.MCMILLAN}:
        reason = "mixed link kinds fall outside both decidable families"
    else:
        reason = "sequence contains link kinds outside both decidable families"
    evidence = {
        "kind": "scope",
        "reason": reason,
        "kinds": sorted(k.value for k in kinds),
    }
    return Certificate(Verdict.UNKNOWN, query, evidence)


def _is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def distinguish_by_prime(
    a: DefiningSequence, b: DefiningSequence, p: int, horizon: int
) -> Certificate:
    """Prime divisibility distinguisher for eventually periodic sequences.

    If ``p`` divides some order in exactly one of the two periods, that
    sequence accumulates unbounded p-valuation in its index products while
    the other's stays bounded, so the manifolds differ.  Otherwise the
    certificate records the divisibility index sets up to the horizon and
    stays undecided.
    """
    if not _is_prime(p):
        raise InvalidInputError(f"{p!r} is not a prime")
    if not isinstance(horizon, int) or horizon < 1:
        raise InvalidInputError(f"horizon must be a positive integer, got {horizon!r}")
    _require_periodic(a)
    _require_periodic(b)
    query = {
        "op": "distinguish",
        "a": a.to_doc(),
        "b": b.to_doc(),
        "p": p,
        "horizon": horizon,
    }

    def hits(seq: DefiningSequence) -> dict:
        period_hits = [
            i for i, link in enumerate(seq.period, start=1) if link.order % p == 0
        ]
        prefix_hits = [
            i for i, link in enumerate(seq.prefix, start=1) if link.order % p == 0
        ]
        level_hits = [
            i
            for i, link in enumerate(seq.links_up_to(horizon), start=1)
            if link.order % p == 0
        ]
        kinds = sorted(
            {link.kind.value for link in seq.all_links() if link.order % p == 0}
        )
        return {
            "period_hits": period_hits,
            "prefix_hits": prefix_hits,
            "levels_up_to_horizon": level_hits,
            "witness_kinds": kinds,
        }

    a_hits = hits(a)
    b_hits = hits(b)
    evidence = {"kind": "prime", "p": p, "horizon": horizon, "a": a_hits, "b": b_hits}
    if bool(a_hits["period_hits"]) != bool(b_hits["period_hits"]):
        evidence["witness"] = "a" if a_hits["period_hits"] else "b"
        return Certificate(Verdict.DISTINCT, query, evidence)
    return Certificate(Verdict.INDISTINGUISHABLE_AT_HORIZON, query, evidence)


def trace_certificate(seq: DefiningSequence, horizon: int) -> Certificate:
    """Divergence trace over the first ``horizon`` links, as a certificate."""
    _require_periodic(seq)
    if not isinstance(horizon, int) or horizon < 1:
        raise InvalidInputError(f"horizon must be a positive integer, got {horizon!r}")
    links = seq.links_up_to(horizon)
    if any(link.kind is not LinkKind.MCMILLAN for link in links):
        raise InvalidSequenceError("divergence traces apply to winding-link sequences only")
    orders = [link.order for link in links]
    trace = divergence_trace(orders)
    query = {"op": "trace", "sequence": seq.to_doc(), "horizon": horizon}
    evidence = {
        "kind": "divergence",
        "orders": orders,
        "start": 1,
        "horizon": horizon,
        "trace": [
            {"level": i, "order": n, "bound": b.value}
            for i, (n, b) in enumerate(zip(orders, trace), start=1)
        ],
        "final_bound": trace[-1].value,
        "exceeds_horizon": trace[-1].value > horizon,
    }
    return Certificate(Verdict.DOUBLE3SPACE_NO, query, evidence)


def replay_certificate(doc: dict) -> dict:
    """Re-run a certificate's query; the result must reproduce the document."""
    cert = Certificate.from_doc(doc)
    op = cert.query.get("op")
    if op == "classify":
        seq = DefiningSequence.from_doc(cert.query.get("sequence", {}))
        return classify_double3(
            seq, cert.query.get("depth"), cert.query.get("horizon")
        ).to_doc()
    if op == "distinguish":
        return distinguish_by_prime(
            DefiningSequence.from_doc(cert.query.get("a", {})),
            DefiningSequence.from_doc(cert.query.get("b", {})),
            cert.query.get("p"),
            cert.query.get("horizon"),
        ).to_doc()
    if op == "trace":
        seq = DefiningSequence.from_doc(cert.query.get("sequence", {}))
        return trace_certificate(seq, cert.query.get("horizon")).to_doc()
    raise InvalidInputError(f"certificate has unknown query op: {op!r}")


def verify_certificate(doc: dict) -> bool:
    """True when replaying the query reproduces the document bit for bit."""
    return replay_certificate(doc) == doc
