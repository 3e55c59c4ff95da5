"""Field-operation counters used by the complexity checks.

Counting is off unless a :func:`count_ops` block is active, so the hot
paths pay one global lookup per tally call.

>>> with count_ops() as ops:
...     ...
>>> ops.total
0
"""

from contextlib import contextmanager

ENABLED = True  # set False to strip all counting

_active = []


class OpCounter:
    def __init__(self):
        self.total = 0
        self.by_kind = {}

    def add(self, kind, n):
        self.total += n
        self.by_kind[kind] = self.by_kind.get(kind, 0) + n

    def __repr__(self):
        return f"OpCounter(total={self.total}, by_kind={self.by_kind})"


def tally(kind, n=1):
    if _active:
        for c in _active:
            c.add(kind, int(n))


@contextmanager
def count_ops():
    counter = OpCounter()
    if not ENABLED:
        yield counter
        return
    _active.append(counter)
    try:
        yield counter
    finally:
        _active.remove(counter)
