"""Engine-wide tunables, surfaced as CLI flags."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Config:
    nmax: int = 12              # default Hilbert table depth
    nmax_limit: int = 30        # ceiling when the zero tail is not yet visible
    window: int = 3             # stabilization window for series reconstruction
    seed: int = 0
    length_cap: int = 64        # truncation exponent ceiling for local lengths
    chain_cap: int = 10         # Ratliff-Rush colon chain ceiling
    reduction_cap: int = 8      # search ceiling for reduction numbers
    persist: int = 2            # persistence window re-checks
    explore_lo: int = 1
    explore_hi: int = 4
    max_retries: int = 8        # superficial-element resampling rounds
    coeff_bound: int = 3        # initial random-coefficient bound

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


DEFAULT = Config()
