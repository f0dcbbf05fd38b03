"""Unit knowledge base: load, validate, index, query.

File format (UTF-8, one record per line, tab-separated, no header), in
the schema's field order:

    unit_id  label_zh  label_en  symbol  alias  description  keywords
    frequency  quantity_kind  dimension  conversion_val  [affine_offset]

List fields (symbol, alias, keywords) use '|' as the internal separator;
the dimension field is the encoded string of :mod:`dimkit.dimension`;
an empty field is the empty string.  The optional 12th column is the
affine offset (0 when absent); only degree-Celsius-style units set it.

The frequency sidecar file is ``unit_id TAB freq_gt TAB freq_hs TAB
freq_cf`` with strictly positive raw scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from .dimension import DimensionVector, format_dimension, is_comparable, parse_dimension
from .errors import (
    AffineConversionError,
    DegenerateScoreError,
    FrequencyDomainError,
    IncomparableUnitsError,
    KbValidationError,
    UnknownKindError,
    UnknownUnitError,
)
from .util import normalize_surface

_FIELDS = (
    "unit_id",
    "label_zh",
    "label_en",
    "symbol",
    "alias",
    "description",
    "keywords",
    "frequency",
    "quantity_kind",
    "dimension",
    "conversion_val",
)


@dataclass(frozen=True)
class UnitRecord:
    """One knowledge-base unit."""

    unit_id: str
    label_en: str
    label_zh: str
    symbol: tuple[str, ...]
    alias: tuple[str, ...]
    description: str
    keywords: tuple[str, ...]
    frequency: float
    quantity_kind: str
    dimension: DimensionVector
    conversion_val: float
    affine_offset: float = 0.0

    def surface_forms(self) -> tuple[str, ...]:
        """All textual forms the unit may take in text, unnormalized."""
        forms = [self.label_en]
        if self.label_zh:
            forms.append(self.label_zh)
        forms.extend(self.symbol)
        forms.extend(self.alias)
        return tuple(f for f in forms if f)


@dataclass(frozen=True)
class QuantityKind:
    """A family of units measuring one physical concept."""

    kind_id: str
    name: str
    dimension: DimensionVector
    standard_unit: str


@dataclass(frozen=True)
class FrequencyWeights:
    """Weights of the three raw popularity signals plus the floor delta."""

    alpha_gt: float = 0.3
    alpha_hs: float = 0.3
    alpha_cf: float = 0.4
    delta: float = 0.1

    def __post_init__(self):
        total = self.alpha_gt + self.alpha_hs + self.alpha_cf
        if any(a < 0 for a in (self.alpha_gt, self.alpha_hs, self.alpha_cf)):
            raise ValueError("alpha weights must be nonnegative")
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"alpha weights must sum to 1, got {total}")
        if not (0.0 < self.delta < 1.0):
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")


@dataclass
class KnowledgeBase:
    """Immutable after construction; unrestricted concurrent reads.

    match_cache memoizes candidate generation per normalized surface;
    concurrent writes at worst recompute an entry.
    """

    records: dict[str, UnitRecord]
    kinds: dict[str, QuantityKind]
    surface_index: dict[str, tuple[str, ...]] = field(default_factory=dict)
    dimension_index: dict[str, tuple[str, ...]] = field(default_factory=dict)
    match_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.records)

    def unit(self, unit_id: str) -> UnitRecord:
        try:
            return self.records[unit_id]
        except KeyError:
            raise UnknownUnitError(f"unknown unit_id {unit_id!r}") from None

    def kind(self, kind_id: str) -> QuantityKind:
        try:
            return self.kinds[kind_id]
        except KeyError:
            raise UnknownKindError(f"unknown kind_id {kind_id!r}") from None

    def units_of_kind(self, kind_id: str) -> tuple[str, ...]:
        self.kind(kind_id)
        return tuple(
            uid for uid, r in sorted(self.records.items()) if r.quantity_kind == kind_id
        )

    @classmethod
    def from_records(cls, records: Iterable[UnitRecord]) -> "KnowledgeBase":
        """Validate every type invariant and build both indexes."""
        by_id: dict[str, UnitRecord] = {}
        for rec in records:
            if rec.unit_id in by_id:
                raise KbValidationError("duplicate unit_id", record_id=rec.unit_id, field="unit_id")
            if rec.conversion_val <= 0:
                raise KbValidationError(
                    "conversion_val must be > 0", record_id=rec.unit_id, field="conversion_val"
                )
            if not (0.0 < rec.frequency <= 1.0):
                raise KbValidationError(
                    f"frequency {rec.frequency} outside (0, 1]",
                    record_id=rec.unit_id,
                    field="frequency",
                )
            by_id[rec.unit_id] = rec

        kinds: dict[str, QuantityKind] = {}
        for kind_id in sorted({r.quantity_kind for r in by_id.values()}):
            members = [r for r in by_id.values() if r.quantity_kind == kind_id]
            dims = {format_dimension(r.dimension) for r in members}
            if len(dims) > 1:
                bad = sorted(m.unit_id for m in members)
                raise KbValidationError(
                    f"kind {kind_id} mixes dimensions {sorted(dims)} across units {bad}",
                    record_id=bad[0],
                    field="dimension",
                )
            # Affine members (nonzero offset) do not compete for standard-unit
            # status; the standard must be purely multiplicative.
            standards = [
                m for m in members if m.conversion_val == 1.0 and m.affine_offset == 0.0
            ]
            if len(standards) != 1:
                raise KbValidationError(
                    f"kind {kind_id} needs exactly one standard unit "
                    f"(conversion_val == 1, offset 0), found {len(standards)}",
                    record_id=members[0].unit_id,
                    field="conversion_val",
                )
            kinds[kind_id] = QuantityKind(
                kind_id=kind_id,
                name=kind_id,
                dimension=members[0].dimension,
                standard_unit=standards[0].unit_id,
            )

        surface: dict[str, set[str]] = {}
        dimension: dict[str, set[str]] = {}
        for rec in by_id.values():
            for form in rec.surface_forms():
                surface.setdefault(normalize_surface(form), set()).add(rec.unit_id)
            dimension.setdefault(format_dimension(rec.dimension), set()).add(rec.unit_id)

        return cls(
            records=dict(sorted(by_id.items())),
            kinds=kinds,
            surface_index={k: tuple(sorted(v)) for k, v in sorted(surface.items())},
            dimension_index={k: tuple(sorted(v)) for k, v in sorted(dimension.items())},
        )


def _parse_record(line: str, lineno: int) -> UnitRecord:
    cols = line.split("\t")
    if len(cols) not in (11, 12):
        raise KbValidationError(
            f"line {lineno}: expected 11 or 12 tab-separated fields, got {len(cols)}"
        )
    unit_id = cols[0].strip()
    if not unit_id:
        raise KbValidationError(f"line {lineno}: empty unit_id", field="unit_id")

    def split_list(value: str) -> tuple[str, ...]:
        return tuple(part.strip() for part in value.split("|") if part.strip())

    try:
        dim = parse_dimension(cols[9].strip())
    except Exception as exc:
        raise KbValidationError(
            f"bad dimension string {cols[9]!r}: {exc}", record_id=unit_id, field="dimension"
        ) from exc
    try:
        frequency = float(cols[7])
        conversion_val = float(cols[10])
        affine_offset = float(cols[11]) if len(cols) == 12 and cols[11].strip() else 0.0
    except ValueError as exc:
        raise KbValidationError(
            f"non-numeric field: {exc}", record_id=unit_id
        ) from exc

    return UnitRecord(
        unit_id=unit_id,
        label_zh=cols[1].strip(),
        label_en=cols[2].strip(),
        symbol=split_list(cols[3]),
        alias=split_list(cols[4]),
        description=cols[5].strip(),
        keywords=split_list(cols[6]),
        frequency=frequency,
        quantity_kind=cols[8].strip(),
        dimension=dim,
        conversion_val=conversion_val,
        affine_offset=affine_offset,
    )


def load_kb(source: str | Path) -> KnowledgeBase:
    """Load and validate a KB file.  Deterministic; an empty file yields
    an empty knowledge base."""
    records = []
    text = Path(source).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        records.append(_parse_record(line, lineno))
    return KnowledgeBase.from_records(records)


def dump_kb(kb: KnowledgeBase, path: str | Path) -> None:
    """Inverse of load_kb; writes records sorted by unit_id."""
    lines = []
    for rec in kb.records.values():
        cols = [
            rec.unit_id,
            rec.label_zh,
            rec.label_en,
            "|".join(rec.symbol),
            "|".join(rec.alias),
            rec.description,
            "|".join(rec.keywords),
            repr(rec.frequency),
            rec.quantity_kind,
            format_dimension(rec.dimension),
            repr(rec.conversion_val),
        ]
        if rec.affine_offset:
            cols.append(repr(rec.affine_offset))
        lines.append("\t".join(cols))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_frequency_sidecar(path: str | Path) -> dict[str, tuple[float, float, float]]:
    """Read the raw (freq_gt, freq_hs, freq_cf) sidecar file."""
    raw: dict[str, tuple[float, float, float]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise KbValidationError(f"sidecar line {lineno}: expected 4 fields, got {len(cols)}")
        raw[cols[0].strip()] = (float(cols[1]), float(cols[2]), float(cols[3]))
    return raw


def compute_frequency(
    raw: Mapping[str, tuple[float, float, float]],
    weights: FrequencyWeights = FrequencyWeights(),
) -> dict[str, float]:
    """Weighted log-score of the three raw signals, min-max rescaled to
    [delta, 1]: the min-score unit gets exactly delta, the max exactly 1.
    """
    alphas = (weights.alpha_gt, weights.alpha_hs, weights.alpha_cf)
    scores: dict[str, float] = {}
    for unit_id, triple in raw.items():
        if len(triple) != 3:
            raise FrequencyDomainError(f"unit {unit_id}: need a (gt, hs, cf) triple")
        if any(v <= 0 for v in triple):
            raise FrequencyDomainError(
                f"unit {unit_id}: raw frequencies must be positive, got {triple}"
            )
        scores[unit_id] = sum(a * math.log(v) for a, v in zip(alphas, triple))

    if not scores:
        return {}
    lo, hi = min(scores.values()), max(scores.values())
    if lo == hi:
        raise DegenerateScoreError("all units share one score; range normalization undefined")
    span = hi - lo
    return {
        unit_id: (1.0 - weights.delta) * ((s - lo) / span) + weights.delta
        for unit_id, s in scores.items()
    }


def kind_frequency(kb: KnowledgeBase, kind_id: str) -> float:
    """Mean frequency of the kind's top five units (all units if fewer)."""
    members = kb.units_of_kind(kind_id)
    if not members:
        raise UnknownKindError(f"kind {kind_id!r} has no units")
    top = sorted((kb.records[u].frequency for u in members), reverse=True)[:5]
    return sum(top) / len(top)


def conversion_factor(kb: KnowledgeBase, u1: str, u2: str) -> float:
    """Multiplicative factor beta such that a magnitude q expressed in u1
    equals q * beta expressed in u2.

    This is the Dimension Law enforcement point: incomparable pairs
    raise, as do pairs involving affine units.
    """
    a, b = kb.unit(u1), kb.unit(u2)
    if not is_comparable(a.dimension, b.dimension):
        raise IncomparableUnitsError(u1, u2, a.dimension, b.dimension)
    if a.affine_offset != 0.0 or b.affine_offset != 0.0:
        raise AffineConversionError(
            f"affine conversion unsupported: {u1} offset {a.affine_offset}, "
            f"{u2} offset {b.affine_offset}"
        )
    return a.conversion_val / b.conversion_val


def lookup_surface(kb: KnowledgeBase, form: str) -> frozenset[str]:
    """Units having the normalized form among label/symbol/alias."""
    return frozenset(kb.surface_index.get(normalize_surface(form), ()))


def units_of_dimension(kb: KnowledgeBase, dv: DimensionVector) -> frozenset[str]:
    """All and only units whose dimension equals dv."""
    return frozenset(kb.dimension_index.get(format_dimension(dv), ()))


def with_frequencies(kb: KnowledgeBase, freqs: Mapping[str, float]) -> KnowledgeBase:
    """Rebuild the KB with the given per-unit frequencies (unlisted units
    keep their current value)."""
    updated = [
        replace(rec, frequency=freqs.get(uid, rec.frequency)) for uid, rec in kb.records.items()
    ]
    return KnowledgeBase.from_records(updated)
