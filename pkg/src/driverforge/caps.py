"""Size caps for brute-force routines.

``DRIVERFORGE_CAP`` overrides the defaults.  A bare integer sets the
state-space cap; ``verify=<n>`` and ``oracle=<n>`` (comma separated) set
each cap explicitly.
"""

from __future__ import annotations

import os

DEFAULT_STATE_CAP = 24
HARD_STATE_CAP = 28
DEFAULT_ORACLE_CAP = 18


class CapExceeded(ValueError):
    pass


def _env_caps() -> dict[str, int]:
    out: dict[str, int] = {}
    for part in os.environ.get("DRIVERFORGE_CAP", "").split(","):
        key, _, value = part.strip().rpartition("=")
        if value.isdigit() and int(value) > 0:
            out[key or "verify"] = int(value)
    return out


def state_cap() -> int:
    return min(_env_caps().get("verify", DEFAULT_STATE_CAP), HARD_STATE_CAP)


def oracle_cap() -> int:
    return _env_caps().get("oracle", DEFAULT_ORACLE_CAP)


def check_state_cap(n: int, cap: int | None = None) -> int:
    cap = state_cap() if cap is None else min(cap, HARD_STATE_CAP)
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the state-space cap of {cap}")
    return cap


def check_oracle_cap(n: int, cap: int | None = None) -> int:
    cap = oracle_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(f"|S|={n} exceeds the oracle cap of {cap}")
    return cap
