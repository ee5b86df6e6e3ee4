"""Per-criterion outcomes of the acceptance suite, shared with conftest."""

RESULTS: dict = {}


def record(n: int, ok: bool, line: str):
    RESULTS[n] = (ok, line)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {line}")
