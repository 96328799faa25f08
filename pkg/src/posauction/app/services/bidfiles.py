"""Bid files, JSON bid payloads and the discrepancy ledger."""

from __future__ import annotations

import json
import logging
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from ...core.errors import ValidationError
from ...core.rational import format_rational, parse_rational
from ...model.bids import BidProfile, make_profile

logger = logging.getLogger("posauction.files")

PathLike = Union[str, Path]


def _read_text(source: PathLike) -> str:
    if str(source) == "-":
        return sys.stdin.read()
    path = Path(source).expanduser()
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ValidationError(f"bid file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{path}: not UTF-8 text ({exc})") from exc


def parse_bid_text(text: str, origin: str = "<bids>") -> BidProfile:
    """One bid per line, '#' comments; a JSON object with a "bids" list also works."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{origin}: invalid JSON ({exc.msg})") from exc
        bids = payload.get("bids") if isinstance(payload, dict) else None
        if not isinstance(bids, list):
            raise ValidationError(f'{origin}: JSON input needs a "bids" list')
        return make_profile(parse_rational(str(item)) for item in bids)

    values: List[Fraction] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        try:
            values.append(parse_rational(content))
        except ValidationError as exc:
            raise ValidationError(f"{origin}:{lineno}: {exc}") from exc
    return make_profile(values)


def read_bid_file(source: PathLike) -> BidProfile:
    origin = "<stdin>" if str(source) == "-" else str(source)
    profile = parse_bid_text(_read_text(source), origin=origin)
    logger.debug("Read %d bids from %s", profile.n, origin)
    return profile


def format_bid_lines(profile: BidProfile, header: Optional[str] = None) -> str:
    lines = [f"# {header}"] if header else []
    lines.extend(format_rational(value) for value in profile.bids)
    return "\n".join(lines) + "\n"


def write_bid_file(profile: BidProfile, path: PathLike, header: Optional[str] = None) -> Path:
    target = Path(path).expanduser()
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_bid_lines(profile, header), encoding="utf-8")
    return target


def _json_safe(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if value is None or isinstance(value, (str, int, float, bool)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        return [_json_safe(v) for v in value]
    return str(value)


def to_json(payload: Any) -> str:
    return json.dumps(_json_safe(payload), ensure_ascii=True)


def ledger_record(kind: str, n: int, R: Fraction, stated: Fraction, measured: Fraction) -> Dict[str, Any]:
    return {
        "kind": kind,
        "n": n,
        "R": format_rational(R),
        "stated": format_rational(stated),
        "measured": format_rational(measured),
        "sound": measured >= stated,
    }


def load_ledger(path: PathLike) -> List[Dict[str, Any]]:
    target = Path(path).expanduser()
    if not target.exists():
        return []
    entries: List[Dict[str, Any]] = []
    for line in target.read_text(encoding="utf-8").splitlines():
        text = line.strip()
        if not text:
            continue
        try:
            payload = json.loads(text)
        except json.JSONDecodeError:
            logger.warning("Skipping invalid ledger line: %s", text)
            continue
        if isinstance(payload, dict):
            entries.append(payload)
    return entries


def write_ledger(entries: Iterable[Dict[str, Any]], path: PathLike) -> Path:
    target = Path(path).expanduser()
    target.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(_json_safe(entry), ensure_ascii=True) for entry in entries]
    target.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return target


def append_ledger(entries: Iterable[Dict[str, Any]], path: PathLike) -> Path:
    target = Path(path).expanduser()
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("a", encoding="utf-8") as handle:
        for entry in entries:
            if entry.get("sound") is False:
                logger.warning(
                    "Ledger discrepancy: %s n=%s R=%s measured %s < stated %s",
                    entry.get("kind"),
                    entry.get("n"),
                    entry.get("R"),
                    entry.get("measured"),
                    entry.get("stated"),
                )
            handle.write(json.dumps(_json_safe(entry), ensure_ascii=True) + "\n")
    return target
