"""Feature report assembly and serialization.

A report always carries every feature key; values the data cannot define
serialize as null, never as zero.  ``flags`` explains nulls with a specific
cause and marks sampled estimates.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .epistasis import (
    DEFAULT_MAX_FIT_NODES,
    PairwiseR2,
    SquareClassification,
    default_eps_tol,
    global_epistasis,
    idiosyncrasy_index,
    pairwise_r2,
)
from .errors import DegenerateFitError, NoNeighborsError, SingleLocusError
from .landscape import Landscape
from .navigability import (
    DEFAULT_MAX_OPTIMA,
    BasinCorrelation,
    basin_fitness_correlation,
    default_sigma,
    ee_fraction,
    fdc,
    global_accessibility,
    mean_accessible_path_length,
    neutrality,
)
from .ruggedness import (
    autocorrelation,
    fraction_local_optima,
    neighbor_fitness_correlation,
    rs_ratio,
)
from .squares import scan_squares

FEATURE_KEYS = (
    "phi_lo",
    "rs_ratio",
    "rho_a",
    "gamma",
    "nfc",
    "eps_mag",
    "eps_sign",
    "eps_reci",
    "eps_pos",
    "eps_neg",
    "i_id",
    "eps_dr",
    "eps_ic",
    "eps_pairwise_r2",
    "fdc",
    "alpha_go",
    "bfc_acc",
    "bfc_greedy",
    "phi_ee",
    "eta",
)

_SQUARE_FEATURES = ("gamma", "eps_mag", "eps_sign", "eps_reci", "eps_pos", "eps_neg")
_FRACTION_FEATURES = ("eps_mag", "eps_sign", "eps_reci", "eps_pos", "eps_neg")


@dataclass(frozen=True)
class AnalyzeOptions:
    """Knobs of one analysis run; None means the documented default."""

    features: frozenset[str] | None = None  # None = all 20
    eps_tol: float | None = None  # default 1e-9 or median replicate sd
    sigma: float | None = None  # default 0 or median replicate sd
    n_walks: int = 1000
    walk_length: int | None = None  # default n
    seed: int = 0
    max_optima: int = DEFAULT_MAX_OPTIMA
    max_fit_nodes: int = DEFAULT_MAX_FIT_NODES

    def selected(self) -> frozenset[str]:
        if self.features is None:
            return frozenset(FEATURE_KEYS)
        unknown = self.features - set(FEATURE_KEYS)
        if unknown:
            raise ValueError(f"unknown feature key(s): {', '.join(sorted(unknown))}")
        return self.features


@dataclass
class FeatureReport:
    features: dict[str, float | None]
    node_count: int
    edge_count: int
    completeness: float
    n_local_optima: int
    global_tie_count: int
    global_optimum: str
    mean_acc_path: float
    sigma_used: float
    eps_tol_used: float
    n_walks: int
    walk_length: int
    seed: int
    n_squares_total: int | None
    n_squares_epistatic: int | None
    flags: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {key: self.features[key] for key in FEATURE_KEYS}
        out.update(
            node_count=self.node_count,
            edge_count=self.edge_count,
            completeness=self.completeness,
            n_local_optima=self.n_local_optima,
            global_tie_count=self.global_tie_count,
            global_optimum=self.global_optimum,
            mean_acc_path=self.mean_acc_path,
            sigma_used=self.sigma_used,
            eps_tol_used=self.eps_tol_used,
            n_walks=self.n_walks,
            walk_length=self.walk_length,
            seed=self.seed,
            n_squares_total=self.n_squares_total,
            n_squares_epistatic=self.n_squares_epistatic,
            flags=dict(sorted(self.flags.items())),
        )
        return out


def analyze(landscape: Landscape, options: AnalyzeOptions | None = None) -> FeatureReport:
    """Compute the selected features plus the always-on diagnostics."""
    opts = options or AnalyzeOptions()
    wanted = opts.selected()
    eps_tol = default_eps_tol(landscape) if opts.eps_tol is None else opts.eps_tol
    sigma = default_sigma(landscape) if opts.sigma is None else opts.sigma
    walk_length = landscape.space.n if opts.walk_length is None else opts.walk_length

    values: dict[str, float | None] = {key: None for key in FEATURE_KEYS}
    flags: dict[str, str] = {}
    for key in FEATURE_KEYS:
        if key not in wanted:
            flags[key] = "skipped"

    scan = None
    n_sq_total: int | None = None
    n_sq_epi: int | None = None
    if wanted & set(_SQUARE_FEATURES):
        try:
            scan = scan_squares(landscape, eps_tol)
            n_sq_total = scan.n_total
            n_sq_epi = scan.n_epistatic
        except SingleLocusError:
            for key in _SQUARE_FEATURES:
                if key in wanted:
                    flags[key] = "single_locus"

    if "phi_lo" in wanted:
        values["phi_lo"] = fraction_local_optima(landscape)
    if "rs_ratio" in wanted:
        try:
            values["rs_ratio"] = rs_ratio(landscape)
        except DegenerateFitError:
            flags["rs_ratio"] = "degenerate_fit"
    if "rho_a" in wanted:
        try:
            values["rho_a"] = autocorrelation(landscape, opts.n_walks, walk_length, opts.seed)
        except NoNeighborsError:
            flags["rho_a"] = "no_neighbors"
    if "nfc" in wanted:
        values["nfc"] = neighbor_fitness_correlation(landscape)

    if scan is not None:
        if "gamma" in wanted:
            values["gamma"] = scan.gamma
        if wanted & set(_FRACTION_FEATURES):
            if scan.n_total == 0:
                for key in _FRACTION_FEATURES:
                    if key in wanted:
                        flags[key] = "no_complete_squares"
            else:
                cls = SquareClassification.from_scan(scan)
                frac = {
                    "eps_mag": cls.eps_mag,
                    "eps_sign": cls.eps_sign,
                    "eps_reci": cls.eps_reci,
                    "eps_pos": cls.eps_pos,
                    "eps_neg": cls.eps_neg,
                }
                for key in _FRACTION_FEATURES:
                    if key in wanted:
                        values[key] = frac[key]
                        if scan.n_epistatic == 0:
                            flags[key] = "no_epistatic_squares"

    if wanted & {"eps_dr", "eps_ic"}:
        eps_dr, eps_ic = global_epistasis(landscape)
        if "eps_dr" in wanted:
            values["eps_dr"] = eps_dr
        if "eps_ic" in wanted:
            values["eps_ic"] = eps_ic
    if "i_id" in wanted:
        values["i_id"] = idiosyncrasy_index(landscape)
    if "eps_pairwise_r2" in wanted:
        if landscape.space.n < 2:
            flags["eps_pairwise_r2"] = "single_locus"
            r2 = PairwiseR2(None, False, False)
        else:
            r2 = pairwise_r2(landscape, opts.max_fit_nodes, opts.seed)
        values["eps_pairwise_r2"] = r2.value
        if r2.sampled:
            flags["eps_pairwise_r2"] = "sampled"
        if r2.degenerate:
            flags["eps_pairwise_r2"] = (
                flags.get("eps_pairwise_r2", "") + "+degenerate_fit"
            ).lstrip("+")

    if "fdc" in wanted:
        values["fdc"] = fdc(landscape)
    if "alpha_go" in wanted:
        values["alpha_go"] = global_accessibility(landscape)
    if "bfc_acc" in wanted:
        acc = basin_fitness_correlation(landscape, "accessible", opts.max_optima, opts.seed)
        values["bfc_acc"] = acc.value
        if acc.sampled:
            flags["bfc_acc"] = "sampled"
    if "bfc_greedy" in wanted:
        values["bfc_greedy"] = basin_fitness_correlation(landscape, "greedy").value
    if "phi_ee" in wanted:
        values["phi_ee"] = ee_fraction(landscape, sigma)
    if "eta" in wanted:
        values["eta"] = neutrality(landscape, sigma)

    for key in FEATURE_KEYS:
        if key in wanted and values[key] is None and key not in flags:
            flags[key] = "undefined"

    optima = landscape.optima
    return FeatureReport(
        features=values,
        node_count=landscape.node_count,
        edge_count=landscape.edge_count,
        completeness=landscape.completeness,
        n_local_optima=optima.count,
        global_tie_count=optima.global_tie_count,
        global_optimum=landscape.space.format_sequence(
            int(landscape.codes[optima.global_optimum])
        ),
        mean_acc_path=mean_accessible_path_length(landscape),
        sigma_used=sigma,
        eps_tol_used=eps_tol,
        n_walks=opts.n_walks,
        walk_length=walk_length,
        seed=opts.seed,
        n_squares_total=n_sq_total,
        n_squares_epistatic=n_sq_epi,
        flags=flags,
    )


def _plain(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def report_to_json(report: FeatureReport) -> str:
    data = {k: _plain(v) for k, v in report.to_dict().items()}
    return json.dumps(data, indent=2, allow_nan=False)


def write_report(report: FeatureReport, path: str, fmt: str | None = None) -> None:
    """Serialize a report as JSON or a two-column key,value CSV.

    CSV cells hold JSON literals so nulls and floats round-trip exactly.
    """
    fmt = fmt or ("csv" if str(path).endswith(".csv") else "json")
    if fmt == "json":
        with open(path, "w") as fh:
            fh.write(report_to_json(report) + "\n")
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["key", "value"])
            for key, value in report.to_dict().items():
                writer.writerow([key, json.dumps(_plain(value), allow_nan=False)])
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def read_report(path: str) -> dict:
    """Parse a report written by :func:`write_report` back into a dict."""
    if str(path).endswith(".csv"):
        out: dict = {}
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if header != ["key", "value"]:
                raise ValueError(f"{path} is not a report CSV")
            for key, raw in reader:
                out[key] = json.loads(raw)
        return out
    with open(path) as fh:
        return json.load(fh)
