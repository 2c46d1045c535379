"""Synthetic landscape models: additive, house-of-cards, rough-mount-fuji,
NK, and eggbox.

All models are deterministic in (config, seed); per-genotype randomness
comes from counter-based Philox streams so regeneration is reproducible and
order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidKError
from .landscape import Landscape
from .space import SequenceSpace

MODELS = ("additive", "hoc", "rmf", "nk", "eggbox")


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of one synthetic landscape.

    alphabet_sizes: one int for uniform loci or a per-locus tuple (NK is
    binary only).  additive/rmf draw per-allele effects from
    N(mu_a, sigma_a^2) with the first allele per locus as the zero-effect
    reference; hoc/rmf add an i.i.d. N(0, sigma_hoc^2) term per genotype;
    eggbox alternates base and base + amplitude with allele-index parity.
    """

    model: str
    n: int
    alphabet_sizes: int | tuple[int, ...] = 2
    mu_a: float = 0.0
    sigma_a: float = 1.0
    sigma_hoc: float = 1.0
    k: int = 0
    nk_neighborhood: str = "random"  # or "adjacent"
    base: float = 0.0
    amplitude: float = 1.0
    seed: int = 0

    def space(self) -> SequenceSpace:
        sizes = self.alphabet_sizes
        if isinstance(sizes, int):
            sizes = tuple(sizes for _ in range(self.n))
        if len(sizes) != self.n:
            raise InvalidKError(f"{len(sizes)} alphabet sizes for n={self.n}")
        return SequenceSpace.of_sizes(sizes)


def _stream(seed: int, tag: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, tag))))


def _additive_fitness(space: SequenceSpace, mu: float, sigma: float, rng) -> np.ndarray:
    codes = np.arange(space.total_size, dtype=np.int64)
    fitness = np.zeros(space.total_size)
    for i in range(space.n):
        effects = np.concatenate(([0.0], rng.normal(mu, sigma, size=space.m[i] - 1)))
        fitness += effects[space.digits(codes, i)]
    return fitness


def _nk_fitness(space: SequenceSpace, n: int, k: int, neighborhood: str, rng) -> np.ndarray:
    if any(m != 2 for m in space.m):
        raise InvalidKError("the NK model is defined over binary loci")
    if not 0 <= k <= n - 1:
        raise InvalidKError(f"k={k} outside [0, {n - 1}]")
    partners = []
    for i in range(n):
        if neighborhood == "adjacent":
            part = np.array([(i + t + 1) % n for t in range(k)], dtype=np.int64)
        else:
            others = np.delete(np.arange(n), i)
            part = rng.choice(others, size=k, replace=False)
        part.sort()
        partners.append(part)
    tables = rng.random((n, 2 ** (k + 1)))
    codes = np.arange(space.total_size, dtype=np.int64)
    total = np.zeros(space.total_size)
    for i in range(n):
        ctx = ((codes >> i) & 1) << k
        for t, p in enumerate(partners[i]):
            ctx |= ((codes >> int(p)) & 1) << (k - 1 - t)
        total += tables[i][ctx]
    return total / n


def _parity(space: SequenceSpace) -> np.ndarray:
    codes = np.arange(space.total_size, dtype=np.int64)
    total = np.zeros(space.total_size, dtype=np.int64)
    for i in range(space.n):
        total += space.digits(codes, i)
    return total % 2


def generate(config: GeneratorConfig) -> Landscape:
    """Create the complete landscape for one model configuration."""
    if config.model not in MODELS:
        raise InvalidKError(f"unknown model {config.model!r}; pick one of {MODELS}")
    space = config.space()
    if config.model == "additive":
        fitness = _additive_fitness(
            space, config.mu_a, config.sigma_a, _stream(config.seed, 0)
        )
    elif config.model == "hoc":
        fitness = _stream(config.seed, 1).normal(
            0.0, config.sigma_hoc, size=space.total_size
        )
    elif config.model == "rmf":
        fitness = _additive_fitness(
            space, config.mu_a, config.sigma_a, _stream(config.seed, 0)
        )
        if config.sigma_hoc > 0:
            fitness = fitness + _stream(config.seed, 1).normal(
                0.0, config.sigma_hoc, size=space.total_size
            )
    elif config.model == "nk":
        fitness = _nk_fitness(
            space, config.n, config.k, config.nk_neighborhood, _stream(config.seed, 2)
        )
    else:  # eggbox
        fitness = config.base + config.amplitude * _parity(space).astype(np.float64)
    codes = np.arange(space.total_size, dtype=np.int64)
    return Landscape.from_arrays(space, codes, fitness)


def nk(n: int, k: int, seed: int = 0, neighborhood: str = "random") -> Landscape:
    return generate(GeneratorConfig(model="nk", n=n, k=k, seed=seed, nk_neighborhood=neighborhood))


def additive(n: int, mu_a: float = 0.5, sigma_a: float = 0.1, seed: int = 0,
             alphabet_sizes: int | tuple[int, ...] = 2) -> Landscape:
    return generate(GeneratorConfig(model="additive", n=n, mu_a=mu_a, sigma_a=sigma_a,
                                    seed=seed, alphabet_sizes=alphabet_sizes))


def hoc(n: int, sigma_hoc: float = 1.0, seed: int = 0) -> Landscape:
    return generate(GeneratorConfig(model="hoc", n=n, sigma_hoc=sigma_hoc, seed=seed))


def rmf(n: int, mu_a: float = 0.0, sigma_a: float = 1.0, sigma_hoc: float = 1.0,
        seed: int = 0) -> Landscape:
    return generate(GeneratorConfig(model="rmf", n=n, mu_a=mu_a, sigma_a=sigma_a,
                                    sigma_hoc=sigma_hoc, seed=seed))


def eggbox(n: int, base: float = 0.0, amplitude: float = 1.0, seed: int = 0) -> Landscape:
    return generate(GeneratorConfig(model="eggbox", n=n, base=base, amplitude=amplitude,
                                    seed=seed))
