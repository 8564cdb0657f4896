"""Size guards for computations whose cost grows like n^(k+1)."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import SizeGuardError


@dataclass(frozen=True)
class SizeGuard:
    max_n: int
    max_k: int
    max_dim: int = 20000

    def check(self, n: int | None = None, k: int | None = None, dim: int | None = None, what: str = "computation") -> None:
        if n is not None and n > self.max_n:
            raise SizeGuardError(f"{what}: n={n} exceeds max_n={self.max_n}")
        if k is not None and k > self.max_k:
            raise SizeGuardError(f"{what}: k={k} exceeds max_k={self.max_k}")
        if dim is not None and dim > self.max_dim:
            raise SizeGuardError(f"{what}: dense dimension {dim} exceeds max_dim={self.max_dim}")

    def override(self, max_n: int | None = None, max_k: int | None = None) -> "SizeGuard":
        return replace(
            self,
            max_n=self.max_n if max_n is None else max_n,
            max_k=self.max_k if max_k is None else max_k,
        )

    def with_env(self) -> "SizeGuard":
        """Apply MAX_N / MAX_K environment overrides."""
        n = os.environ.get("MAX_N")
        k = os.environ.get("MAX_K")
        return self.override(int(n) if n else None, int(k) if k else None)


RELATION_GUARD = SizeGuard(max_n=5, max_k=1)
RANK_GUARD = SizeGuard(max_n=4, max_k=4)
LIE_GUARD = SizeGuard(max_n=4, max_k=5)
