"""Write fixtures/*.json from the built-in catalog, or check they are current."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT / "src"))

from nsemiprimary.catalog import exported_names, fixture_data  # noqa: E402


def _render(name: str) -> str:
    return json.dumps(fixture_data(name), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def export(target: Path, *, check: bool = False) -> list[str]:
    """Return the fixture names whose file differs (and rewrite them unless *check*)."""
    target.mkdir(parents=True, exist_ok=True)
    stale: list[str] = []
    for name in exported_names():
        path = target / f"{name}.json"
        text = _render(name)
        if path.exists() and path.read_text(encoding="utf-8") == text:
            continue
        stale.append(name)
        if not check:
            path.write_text(text, encoding="utf-8")
    known = set(exported_names())
    stale += sorted(p.stem for p in target.glob("*.json") if p.stem not in known)
    return stale


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--output",
        type=Path,
        default=PROJECT_ROOT / "fixtures",
        help="Directory holding the exported fixtures",
    )
    parser.add_argument("--check", action="store_true", help="Fail instead of rewriting")
    args = parser.parse_args(argv)

    stale = export(args.output, check=args.check)
    if args.check and stale:
        print(f"stale fixtures: {', '.join(stale)}", file=sys.stderr)
        return 1
    print(f"{len(exported_names())} fixtures in {args.output}")
    return 0


if __name__ == "__main__":  # pragma: no cover - CLI entry point
    raise SystemExit(main())
