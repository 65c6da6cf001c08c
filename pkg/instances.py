"""
Instance documents: JSON text <-> InstanceDocument <-> Partition, plus
seeded random instances.

Document shape:
    {"universe": ["a", "b", ...], "blocks": [["a", "b"], ["c"], ...]}
"""

import hashlib
import json
import random
import string
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

import settings
from exceptions import (
    CoverageError,
    EmptyBlockError,
    EmptyUniverseError,
    InstanceSyntaxError,
    InvalidParameterError,
    OverlapError,
    SemanticError,
    UnknownElementError,
)
from models import Partition, Subset, Universe
from schemas import InstanceDocument


# ============ PARSE / PRINT ============


def parse_instance(text: str) -> InstanceDocument:
    """Parse and validate an instance document.

    JSON errors carry line/column; shape and partition errors are semantic.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(raw, dict):
        raise InstanceSyntaxError("instance must be a JSON object", 1, 1)

    try:
        doc = InstanceDocument.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise SemanticError(f"{where}: {first['msg']}") from exc

    if not doc.universe:
        raise EmptyUniverseError()
    document_to_partition(doc)
    return doc


def print_instance(doc: InstanceDocument) -> str:
    return json.dumps(doc.model_dump(), indent=2, ensure_ascii=False) + "\n"


def load_instance(path) -> InstanceDocument:
    """Read and parse an instance file; bytes that are not UTF-8 are a syntax error."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line_start = data.rfind(b"\n", 0, exc.start) + 1
        raise InstanceSyntaxError(
            f"invalid UTF-8 byte 0x{data[exc.start]:02x}",
            data.count(b"\n", 0, exc.start) + 1,
            exc.start - line_start + 1,
        ) from exc
    return parse_instance(text)


def instance_digest(doc: InstanceDocument) -> str:
    return hashlib.sha256(print_instance(doc).encode("utf-8")).hexdigest()


# ============ CONVERSION ============


def document_to_partition(doc: InstanceDocument) -> Partition:
    if not doc.universe:
        raise EmptyUniverseError()
    universe = Universe.from_names(doc.universe)
    blocks = []
    for position, names in enumerate(doc.blocks):
        if len(set(names)) != len(names):
            raise SemanticError(f"block {position} repeats an element")
        try:
            blocks.append(universe.subset(names))
        except UnknownElementError as exc:
            raise SemanticError(f"unknown element {exc.name} in block {position}") from exc
    try:
        return Partition(universe, tuple(blocks))
    except (OverlapError, CoverageError, EmptyBlockError) as exc:
        raise SemanticError(str(exc)) from exc


def partition_to_document(p: Partition) -> InstanceDocument:
    """Canonical document: blocks by minimum element, members in universe order."""
    universe = p.universe
    return InstanceDocument(
        universe=list(universe.labels_all()),
        blocks=[universe.labels(block) for block in p.blocks],
    )


# ============ RANDOM INSTANCES ============


def default_names(n: int) -> tuple:
    if n <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"u{i}" for i in range(n))


def random_partition(
    n: int,
    seed: int,
    blocks: Optional[int] = None,
    names: Optional[tuple] = None,
    cap: Optional[int] = None,
) -> Partition:
    """Deterministic partition for (n, blocks, seed).

    Block sizes are a composition of n drawn uniformly (k-1 distinct cut
    points among n-1 gaps); elements are shuffled before cutting. Without
    `blocks` the block count is drawn uniformly from 1..n first.
    """
    cap = settings.resolve_cap(cap, settings.MAX_GROUND_SIZE)
    if not 1 <= n <= cap:
        raise InvalidParameterError(f"n must be between 1 and {cap}, got {n}")
    rng = random.Random(seed)
    k = rng.randint(1, n) if blocks is None else blocks
    if not 1 <= k <= n:
        raise InvalidParameterError(f"blocks must be between 1 and n={n}, got {k}")

    cuts = sorted(rng.sample(range(1, n), k - 1))
    order = list(range(n))
    rng.shuffle(order)
    bounds = [0, *cuts, n]
    parts = tuple(Subset.of(n, order[a:b]) for a, b in zip(bounds, bounds[1:]))
    return Partition(Universe(n, names or default_names(n)), parts)


def random_instance(n: int, blocks: int, seed: int) -> InstanceDocument:
    return partition_to_document(random_partition(n, seed, blocks))
