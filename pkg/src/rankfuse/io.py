"""Plain-text readers and writers.

All files are UTF-8 with LF newlines. Lines starting with ``#`` are comments
on input; every writer puts the producing configuration in a leading ``#``
line. Parsing is strict: a malformed line raises :class:`ParseError` with its
line number.
"""

from __future__ import annotations

import csv
import io as _io
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DuplicateObject, EmptyInput, EmptyRanking, LengthMismatch, ParseError
from .rankings import Ranking, RankingList, WeightedRanking


def config_line(command: str, settings: Mapping[str, object]) -> str:
    body = " ".join(f"{k}={v}" for k, v in settings.items())
    return f"# rankfuse {command} {body}".rstrip()


def _content_lines(path):
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def _parse_id(tok: str, path, lineno: int) -> int:
    tok = tok.strip()
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(f"object id {tok!r} is not an integer", path, lineno) from None
    if val < 1:
        raise ParseError(f"object id {val} is not positive", path, lineno)
    return val


def parse_rankings_file(path, weights_path=None) -> RankingList:
    """One ranking per line (comma-separated ids, best first); optional weights sidecar."""
    rankings = []
    for lineno, line in _content_lines(path):
        ids = [_parse_id(tok, path, lineno) for tok in line.split(",")]
        try:
            rankings.append(Ranking(tuple(ids)))
        except (DuplicateObject, EmptyRanking) as exc:
            raise type(exc)(f"{path}:{lineno}: {exc}") from None
    if not rankings:
        raise EmptyInput(f"{path}: no rankings found")
    weights = [1.0] * len(rankings)
    if weights_path is not None:
        weights = parse_weights_file(weights_path)
        if len(weights) != len(rankings):
            raise LengthMismatch(f"{len(rankings)} rankings but {len(weights)} weights")
    return RankingList(WeightedRanking(r, w) for r, w in zip(rankings, weights))


def parse_weights_file(path) -> list[float]:
    out = []
    for lineno, line in _content_lines(path):
        try:
            w = float(line.strip())
        except ValueError:
            raise ParseError(f"weight {line.strip()!r} is not a number", path, lineno) from None
        if not w >= 0 or w == float("inf"):
            raise ParseError(f"weight {w} must be finite and non-negative", path, lineno)
        out.append(w)
    return out


def format_rankings(rankings: Iterable[Ranking], header: str | None = None) -> str:
    lines = [header] if header else []
    lines.extend(",".join(map(str, r.order)) for r in rankings)
    return "\n".join(lines) + "\n"


def format_weights(weights: Iterable[float]) -> str:
    return "".join(f"{w!r}\n" for w in weights)


def write_rankings(path, inputs: RankingList | Iterable[Ranking], header: str | None = None,
                   weights_path=None) -> None:
    if isinstance(inputs, RankingList):
        ranks, weights = inputs.rankings, inputs.weights.tolist()
    else:
        ranks, weights = list(inputs), None
    Path(path).write_text(format_rankings(ranks, header), encoding="utf-8")
    if weights_path is not None and weights is not None:
        Path(weights_path).write_text(format_weights(weights), encoding="utf-8")


# -- crowd label files ------------------------------------------------------


def _delimiter(path) -> str:
    return "\t" if str(path).lower().endswith(".tsv") else ","


def _coerce_id(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        return tok


def _read_table(path, columns: tuple[str, ...]):
    delim = _delimiter(path)
    rows = list(_content_lines(path))
    if not rows:
        raise ParseError("file is empty", path)
    header_no, header_line = rows[0]
    header = [h.strip().lower() for h in next(csv.reader([header_line], delimiter=delim))]
    if header != list(columns):
        raise ParseError(f"expected header {','.join(columns)}, got {','.join(header)}", path, header_no)
    for lineno, line in rows[1:]:
        fields = next(csv.reader([line], delimiter=delim))
        if len(fields) != len(columns):
            raise ParseError(f"expected {len(columns)} fields, got {len(fields)}", path, lineno)
        yield lineno, fields


def _parse_label(tok: str, path, lineno: int) -> int:
    tok = tok.strip()
    if tok not in ("0", "1"):
        raise ParseError(f"label {tok!r} is not 0 or 1", path, lineno)
    return int(tok)


def read_labels(path):
    """Read ``worker,item,label`` rows into a :class:`~rankfuse.crowd.LabelMatrix`."""
    from .crowd import LabelMatrix

    seen = {}
    records = []
    for lineno, (w, i, lab) in _read_table(path, ("worker", "item", "label")):
        key = (_coerce_id(w), _coerce_id(i))
        if key in seen:
            raise ParseError(f"worker {key[0]!r} labels item {key[1]!r} again (first on line {seen[key]})",
                             path, lineno)
        seen[key] = lineno
        records.append((key[0], key[1], _parse_label(lab, path, lineno)))
    if not records:
        raise EmptyInput(f"{path}: no labels found")
    return LabelMatrix(tuple(records))


def read_gold(path) -> dict:
    gold = {}
    for lineno, (i, lab) in _read_table(path, ("item", "label")):
        item = _coerce_id(i)
        if item in gold:
            raise ParseError(f"item {item!r} has two gold labels", path, lineno)
        gold[item] = _parse_label(lab, path, lineno)
    return gold


def read_rte_standardized(path):
    """Read the tab-separated RTE release with columns
    ``!amt_annotation_ids  !amt_worker_ids  orig_id  response  gold``.

    Returns ``(labels, gold)``.
    """
    from .crowd import LabelMatrix

    records, gold = [], {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = [h.strip() for h in next(reader)]
        try:
            cw, ci, cr, cg = (header.index(c) for c in ("!amt_worker_ids", "orig_id", "response", "gold"))
        except ValueError:
            raise ParseError("not an RTE standardized file (missing columns)", path, 1) from None
        for lineno, fields in enumerate(reader, start=2):
            if not fields or not "".join(fields).strip():
                continue
            try:
                item = _coerce_id(fields[ci])
                records.append((fields[cw].strip(), item, _parse_label(fields[cr], path, lineno)))
                gold[item] = _parse_label(fields[cg], path, lineno)
            except IndexError:
                raise ParseError("short row", path, lineno) from None
    return LabelMatrix(tuple(records)), gold


# -- result emission --------------------------------------------------------


def curves_csv(result, header: str | None = None) -> str:
    buf = _io.StringIO()
    if header:
        buf.write(header + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algorithm", "sigma", "mean_similarity"])
    for algo, pts in result.curves.items():
        for sigma, sim in pts:
            w.writerow([algo, repr(float(sigma)), repr(float(sim))])
    return buf.getvalue()


def auc_csv(result, header: str | None = None) -> str:
    buf = _io.StringIO()
    if header:
        buf.write(header + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algorithm", "auc"])
    for algo, auc in result.auc.items():
        w.writerow([algo, repr(float(auc))])
    return buf.getvalue()


def read_curves_csv(path) -> dict[str, list[tuple[float, float]]]:
    out: dict[str, list[tuple[float, float]]] = {}
    for _, (algo, sigma, sim) in _read_table(path, ("algorithm", "sigma", "mean_similarity")):
        out.setdefault(algo, []).append((float(sigma), float(sim)))
    return out


def crowd_report_text(report, header: str | None = None) -> str:
    fmt = lambda v: "NA" if v is None else repr(v)  # noqa: E731
    lines = [header] if header else []
    lines += [
        f"workers={len(report.worker_rankings.workers)}",
        f"items={len(report.predicted)}",
        f"majority_accuracy={fmt(report.majority_accuracy)}",
        f"proposed_accuracy={fmt(report.accuracy)}",
        f"consensus_objective={report.aggregation.objective!r}",
        f"consensus_weight={report.aggregation.weight!r}",
        "consensus_workers=" + ",".join(map(str, report.consensus_workers)),
    ]
    return "\n".join(lines) + "\n"


def annotators_csv(report, header: str | None = None) -> str:
    buf = _io.StringIO()
    if header:
        buf.write(header + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["worker", "rank", "weight", "accuracy", "specificity", "sensitivity", "precision",
                "tp", "tn", "fp", "fn"])
    fmt = lambda v: "NA" if v is None else repr(v)  # noqa: E731
    for k, worker in enumerate(report.consensus_workers, start=1):
        q = report.features[worker]
        w.writerow([worker, k, repr(report.worker_weights[worker]), fmt(q.accuracy), fmt(q.specificity),
                    fmt(q.sensitivity), fmt(q.precision), q.tp, q.tn, q.fp, q.fn])
    return buf.getvalue()
