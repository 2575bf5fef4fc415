"""
结果CSV读写

每个文件以若干 "# key=value" 溯源行开头，随后为固定表头与数据行，
可选的 "# key=value" 尾注行。不写时间戳，同一配置重跑得到逐字节相同的文件。
"""
import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .spectrum import DistanceSpectrum, SpectrumTerm

BER_COLUMNS = ("ebno_db", "frames", "bits", "bit_errors", "frame_errors", "ber", "fer")
STATS_COLUMNS = ("family", "params", "samples", "mean_dfree", "mean_nfree", "mean_wfree", "std_dfree")
SPECTRUM_COLUMNS = ("weight", "codeword_multiplicity", "information_weight")
ASYMPTOTE_COLUMNS = ("ebno_db", "ber")
CENSUS_COLUMNS = ("source", "input_distance", "output_distance", "count")


class CsvFormatError(ValueError):
    """CSV格式错误，消息中带文件名和1起的行号"""

    def __init__(self, path: Union[str, Path], line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line


@dataclass
class CsvTable:
    columns: List[str]
    rows: List[Dict[str, str]]
    meta: Dict[str, str] = field(default_factory=dict)
    footer: Dict[str, str] = field(default_factory=dict)


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".10g")
    if value is None:
        return ""
    return str(value)


def write_csv(path: Union[str, Path], columns: Sequence[str], rows: Iterable[Sequence[Any]],
              provenance: Optional[Sequence[Tuple[str, Any]]] = None,
              footer: Optional[Sequence[Tuple[str, Any]]] = None) -> Path:
    """写出带溯源头的CSV"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    for key, value in provenance or ():
        buf.write(f"# {key}={format_value(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    for key, value in footer or ():
        buf.write(f"# {key}={format_value(value)}\n")
    path.write_text(buf.getvalue(), encoding="utf-8", newline="\n")
    return path


def read_csv(path: Union[str, Path]) -> CsvTable:
    """
    读取CSV；表头前的注释行为溯源，表头后的注释行为尾注

    Raises:
        CsvFormatError: 缺少表头、列数不符或注释行不是 key=value
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise CsvFormatError(path, 0, f"cannot read file: {e}")
    meta: Dict[str, str] = {}
    footer: Dict[str, str] = {}
    columns: Optional[List[str]] = None
    rows: List[Dict[str, str]] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" not in body:
                raise CsvFormatError(path, lineno, f"comment is not key=value: {line!r}")
            key, value = body.split("=", 1)
            (meta if columns is None else footer)[key.strip()] = value.strip()
            continue
        cells = next(csv.reader([line]))
        if columns is None:
            columns = cells
            continue
        if footer:
            raise CsvFormatError(path, lineno, "data row after footer")
        if len(cells) != len(columns):
            raise CsvFormatError(path, lineno, f"expected {len(columns)} fields, got {len(cells)}")
        rows.append(dict(zip(columns, cells)))
    if columns is None:
        raise CsvFormatError(path, max(len(lines), 1), "missing header row")
    return CsvTable(columns, rows, meta, footer)


def _require(table: CsvTable, path, expected: Sequence[str]) -> None:
    if tuple(table.columns) != tuple(expected):
        raise CsvFormatError(path, len(table.meta) + 1, f"header must be {','.join(expected)}")


def write_spectrum(path, spectrum: DistanceSpectrum, provenance=None) -> Path:
    rows = [(t.weight, t.multiplicity, t.information_weight) for t in spectrum.terms]
    footer = [("certified_up_to", spectrum.certified_up_to)]
    if not spectrum.complete:
        footer.append(("complete", False))
    return write_csv(path, SPECTRUM_COLUMNS, rows, provenance, footer)


def read_spectrum(path) -> DistanceSpectrum:
    table = read_csv(path)
    _require(table, path, SPECTRUM_COLUMNS)
    terms = []
    for k, row in enumerate(table.rows):
        try:
            terms.append(SpectrumTerm(int(row["weight"]), int(row["codeword_multiplicity"]),
                                      int(row["information_weight"])))
        except ValueError as e:
            raise CsvFormatError(path, len(table.meta) + 2 + k, str(e))
    if not terms:
        raise CsvFormatError(path, len(table.meta) + 1, "spectrum has no terms")
    d_cert = int(table.footer.get("certified_up_to", terms[-1].weight))
    complete = table.footer.get("complete", "true") != "false"
    return DistanceSpectrum(terms, d_cert, d_cert, d_cert, complete)


def write_asymptote(path, points, provenance=None) -> Path:
    return write_csv(path, ASYMPTOTE_COLUMNS, [(p.ebno_db, p.ber) for p in points], provenance)


def write_ber(path, points, provenance=None) -> Path:
    rows = [(p.ebno_db, p.frames, p.bits, p.bit_errors, p.frame_errors, p.ber, p.fer) for p in points]
    return write_csv(path, BER_COLUMNS, rows, provenance)


def write_stats(path, stats, provenance=None) -> Path:
    row = (stats.family, stats.params, stats.samples, stats.mean_dfree, stats.mean_nfree,
           stats.mean_wfree, stats.std_dfree)
    return write_csv(path, STATS_COLUMNS, [row], provenance)


def write_census(path, rows: Iterable[Tuple[str, int, int, int]], provenance=None,
                 footer: Optional[Mapping[str, Any]] = None) -> Path:
    return write_csv(path, CENSUS_COLUMNS, rows, provenance, list((footer or {}).items()))
