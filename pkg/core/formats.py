"""
File formats for PencilSpec
Matrix and polynomial JSON, report JSON and curve-sample CSV.

Matrices:    {"n": N, "re": [[...]], "im": [[...]]}   ("im" optional)
Polynomials: {"degree": d, "terms": [{"i": i, "j": j, "c": c}, ...]}

Output is canonical: sorted keys and shortest round-trip float repr, so a
load followed by a save reproduces the file byte for byte.
"""

import csv
import json
from pathlib import Path

import numpy as np

from utils.logger import get_logger

from .errors import DataFormatError, MalformedInputError, UsageError
from .polynomials import BivariatePolynomial

logger = get_logger('formats')

CSV_COLUMNS = ('re_x', 'im_x', 're_y', 'im_y', 'abs_P')


def read_json(path):
    """Parse a JSON file; unreadable or unparseable input is a usage error."""
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except OSError as e:
        raise UsageError(f"{path}: cannot read file: {e}") from e
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def dumps(data):
    """Canonical JSON text."""
    return json.dumps(_plain(data), sort_keys=True, indent=2, allow_nan=True) + '\n'


def write_json(path, data):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps(data))
    logger.debug(f"wrote {path}")


def _plain(value):
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    return value


def _real_grid(data, key, n, path):
    rows = data[key]
    if not isinstance(rows, list) or len(rows) != n:
        raise DataFormatError(f"expected {n} rows", path, key)
    grid = np.empty((n, n))
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise DataFormatError(f"row {r} must have {n} entries", path, f"{key}[{r}]")
        for c, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, (int, float)):
                raise DataFormatError(f"entry is not a number: {entry!r}", path, f"{key}[{r}][{c}]")
            if not np.isfinite(entry):
                raise DataFormatError("entry is not finite", path, f"{key}[{r}][{c}]")
            grid[r, c] = entry
    return grid


def matrix_from_dict(data, path=None):
    if not isinstance(data, dict):
        raise DataFormatError("matrix file must hold a JSON object", path)
    for key in ('n', 're'):
        if key not in data:
            raise DataFormatError("missing", path, key)
    n = data['n']
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DataFormatError(f"must be a positive integer, got {n!r}", path, 'n')
    matrix = _real_grid(data, 're', n, path).astype(complex)
    if data.get('im') is not None:
        matrix += 1j * _real_grid(data, 'im', n, path)
    return matrix


def matrix_to_dict(M, basis_labels=None):
    M = np.asarray(M, dtype=complex)
    data = {'n': int(M.shape[0]), 're': M.real.tolist(), 'im': M.imag.tolist()}
    if basis_labels is not None:
        data['basis'] = list(basis_labels)
    return data


def load_matrix(path):
    return matrix_from_dict(read_json(path), path)


def save_matrix(path, M, basis_labels=None):
    """Write M; exterior powers pass their subset labels as basis_labels."""
    write_json(path, matrix_to_dict(M, basis_labels))


def polynomial_from_dict(data, path=None):
    if not isinstance(data, dict):
        raise DataFormatError("polynomial file must hold a JSON object", path)
    for key in ('degree', 'terms'):
        if key not in data:
            raise DataFormatError("missing", path, key)
    degree = data['degree']
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 0:
        raise DataFormatError(f"must be a nonnegative integer, got {degree!r}", path, 'degree')
    if not isinstance(data['terms'], list):
        raise DataFormatError("must be a list", path, 'terms')
    terms = []
    for index, term in enumerate(data['terms']):
        where = f"terms[{index}]"
        if not isinstance(term, dict) or any(key not in term for key in ('i', 'j', 'c')):
            raise DataFormatError("term needs keys i, j, c", path, where)
        i, j, c = term['i'], term['j'], term['c']
        if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in (i, j)):
            raise DataFormatError("exponents must be nonnegative integers", path, where)
        if i + j > degree:
            raise DataFormatError(f"x^{i} y^{j} exceeds degree {degree}", path, where)
        if isinstance(c, bool) or not isinstance(c, (int, float)) or not np.isfinite(c):
            raise DataFormatError(f"coefficient is not a finite number: {c!r}", path, where)
        terms.append((i, j, float(c)))
    return BivariatePolynomial.from_terms(terms, degree=degree)


def polynomial_to_dict(P):
    terms = sorted(P.terms(), key=lambda term: (term[0] + term[1], term[0]))
    return {'degree': P.degree, 'terms': [{'i': i, 'j': j, 'c': c} for i, j, c in terms]}


def load_polynomial(path):
    return polynomial_from_dict(read_json(path), path)


def save_polynomial(path, P):
    write_json(path, polynomial_to_dict(P))


def save_report(path, report):
    """Write any report object exposing to_dict()."""
    write_json(path, report.to_dict())


def write_samples_csv(target, points, values):
    """Curve samples as rows re_x, im_x, re_y, im_y, abs_P; target is a path or an open text stream."""
    points = np.asarray(points, dtype=complex).reshape(-1, 2)
    values = np.abs(np.asarray(values)).ravel()
    if isinstance(target, (str, Path)):
        with open(target, 'w', encoding='utf-8', newline='') as f:
            return write_samples_csv(f, points, values)
    writer = csv.writer(target, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for (x, y), value in zip(points, values):
        writer.writerow([repr(float(x.real)), repr(float(x.imag)), repr(float(y.real)),
                         repr(float(y.imag)), repr(float(value))])
    return len(points)
