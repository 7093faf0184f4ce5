"""Collects one verdict per acceptance criterion for the terminal summary."""

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, note: str = "") -> None:
    prev = RESULTS.get(number)
    RESULTS[number] = (ok and (prev is None or prev[0]), note or (prev[1] if prev else ""))


def summary_lines() -> list[str]:
    return [f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}{'  ' + note if note else ''}"
            for n, (ok, note) in sorted(RESULTS.items())]
