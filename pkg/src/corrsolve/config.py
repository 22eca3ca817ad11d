"""Default caps shared by the CLI and the experiment scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Caps:
    max_n: int = 8  # period iterations
    max_degree: int = 4096  # bidegree cap for iterated relations
    orbit_cap: int = 64  # deg a + deg b before an orbit is declared cap-exceeded
    deg_bound: int = 8  # separated-multiple numerator degree
    den_bound: int = 2  # separated-multiple monomial denominator exponent
    seed_height: int = 6  # rational seeds n/d with max(|n|, d) <= seed_height
    max_orbits: int = 16  # Thetas collected before certify gives up

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_CAPS = Caps()
