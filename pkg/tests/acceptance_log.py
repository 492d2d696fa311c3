"""Shared state between conftest and the acceptance tests."""

from contextlib import contextmanager

# every diagram the engine emits during the session is audited into this
DIAGRAM_LOG = {"count": 0, "violations": []}
# criterion number -> (passed, description)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(key: int, text: str, ok: bool) -> None:
    prev = ACCEPTANCE.get(key, (True, text))[0]
    ACCEPTANCE[key] = (prev and ok, text)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {text}")


@contextmanager
def criterion(key: int, text: str):
    try:
        yield
    except BaseException:
        record(key, text, False)
        raise
    record(key, text, True)
