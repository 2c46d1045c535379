"""CSV ingestion and landscape CSV output.

Input format: a header row naming ``sequence`` and ``fitness`` columns (an
optional ``variance`` column carries replicate variances); extra columns are
ignored.  The sequence cell is one character per locus, or a delimited list
of multi-character alleles when a delimiter is given.
"""

from __future__ import annotations

import csv

from .errors import (
    EmptyInputError,
    MissingColumnError,
    NonNumericFitnessError,
    RaggedRowError,
)
from .landscape import Landscape, VariantRecord


def read_csv(path: str, delimiter: str | None = None) -> list[VariantRecord]:
    """Parse variant records from a CSV file."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInputError(f"{path} is empty") from None
        names = [h.strip().lower() for h in header]
        try:
            seq_col = names.index("sequence")
            fit_col = names.index("fitness")
        except ValueError:
            missing = {"sequence", "fitness"} - set(names)
            raise MissingColumnError(
                f"{path} lacks required column(s): {', '.join(sorted(missing))}"
            ) from None
        var_col = names.index("variance") if "variance" in names else None

        records: list[VariantRecord] = []
        n_loci: int | None = None
        for line_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise RaggedRowError(line_no, f"{len(row)} cells vs {len(header)} header columns")
            cell = row[seq_col].strip()
            alleles = tuple(cell.split(delimiter)) if delimiter else tuple(cell)
            if n_loci is None:
                n_loci = len(alleles)
            elif len(alleles) != n_loci:
                raise RaggedRowError(line_no, f"sequence length {len(alleles)} vs {n_loci}")
            try:
                fitness = float(row[fit_col])
            except ValueError:
                raise NonNumericFitnessError(line_no, row[fit_col]) from None
            variance = None
            if var_col is not None and row[var_col].strip():
                try:
                    variance = float(row[var_col])
                except ValueError:
                    raise NonNumericFitnessError(line_no, row[var_col]) from None
            records.append(VariantRecord(alleles, fitness, variance))
    if not records:
        raise EmptyInputError(f"{path} holds a header but no data rows")
    return records


def write_landscape_csv(
    landscape: Landscape, path: str, delimiter: str | None = None
) -> None:
    """Write a landscape back out as sequence,fitness[,variance] rows."""
    multi = any(
        len(sym) != 1 for alpha in landscape.space.alphabets for sym in alpha
    )
    if multi and not delimiter:
        raise ValueError("multi-character alleles need an explicit delimiter")
    sep = delimiter or ""
    has_var = landscape.variance is not None
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sequence", "fitness", "variance"] if has_var else ["sequence", "fitness"])
        for i in range(landscape.node_count):
            seq = landscape.space.format_sequence(int(landscape.codes[i]), sep)
            if has_var:
                var = landscape.variance[i]
                writer.writerow([seq, repr(float(landscape.fitness[i])),
                                 "" if var != var else repr(float(var))])
            else:
                writer.writerow([seq, repr(float(landscape.fitness[i]))])
