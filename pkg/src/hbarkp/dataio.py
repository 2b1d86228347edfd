"""JSON encodings for data files and result tables.

Data files look like

    {
      "hbar": {"mode": "symbolic", "window": [-6, 6]}
            | {"mode": "rational", "value": "1/2"},
      "caps": {"weight": 4, "x_order": 4, "z_order": 4},
      "c": {"0": ["1", "1/2"], "1": ["0", "2"], ...}     # tau-side data
      # or "f": {"0": [...], "1": [...], ...}            # F-side data
      # or "cauchy": {"0": [...], "1": [...], ...}       # plain derivatives
    }

x-coefficient lists are lowest degree first; the list length encodes the
valid order (length v+1 means trustworthy through x^v).  Partition-keyed
tables use the "p1,p2,..." key format with "" for the empty diagram.
"""

from __future__ import annotations

import json

from .fbuild import FData, FSeries
from .hscalar import HContext, scalar_from_json, scalar_to_json
from .partitions import Partition
from .taubuild import TauData, TauSeries
from .xseries import XSeries


class DataFormatError(ValueError):
    pass


def hbar_to_json(ctx: HContext) -> dict:
    if ctx.is_numeric:
        return {"mode": "rational", "value": str(ctx.value)}
    return {"mode": "symbolic", "window": [ctx.lo, ctx.hi]}


def hbar_from_json(obj) -> HContext:
    try:
        mode = obj["mode"]
        if mode == "rational":
            return HContext.numeric(obj["value"])
        if mode == "symbolic":
            lo, hi = obj["window"]
            return HContext.symbolic(int(lo), int(hi))
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError(f"bad hbar entry: {obj!r}") from exc
    raise DataFormatError(f"unknown hbar mode: {mode!r}")


def caps_from_json(obj) -> tuple[int, int, int]:
    try:
        return int(obj["weight"]), int(obj["x_order"]), int(obj.get("z_order", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError(f"bad caps: {obj!r}") from exc


def caps_to_json(weight, x_order, z_order) -> dict:
    return {"weight": weight, "x_order": x_order, "z_order": z_order}


def xseries_to_json(s: XSeries) -> list:
    return [scalar_to_json(c) for c in s.coeffs]


def xseries_from_json(ctx: HContext, cap: int, lst) -> XSeries:
    if not isinstance(lst, list):
        raise DataFormatError(f"series must be a list: {lst!r}")
    coeffs = [scalar_from_json(ctx, v) for v in lst]
    valid = min(len(coeffs) - 1, cap) if coeffs else cap
    return XSeries(ctx, cap, coeffs, valid=valid)


def _indexed_series(ctx, x_cap, mapping, what) -> list[XSeries]:
    try:
        idx = sorted(int(k) for k in mapping)
    except ValueError as exc:
        raise DataFormatError(f"non-integer index in {what}") from exc
    if idx != list(range(len(idx))) or not idx:
        raise DataFormatError(f"{what} must be indexed 0..K without gaps")
    return [xseries_from_json(ctx, x_cap, mapping[str(k)]) for k in idx]


def document_context(doc) -> tuple[HContext, int, int, int]:
    ctx = hbar_from_json(doc.get("hbar", {}))
    W, X, Z = caps_from_json(doc.get("caps", {}))
    if W < 1 or X < 0 or Z < 0:
        raise DataFormatError("caps must be positive")
    return ctx, W, X, Z


def tau_data_from_document(doc) -> TauData:
    ctx, W, X, _ = document_context(doc)
    if "c" not in doc:
        raise DataFormatError('tau data need a "c" table')
    series = _indexed_series(ctx, X, doc["c"], '"c"')
    return TauData(ctx, W, X, tuple(series))


def f_data_from_document(doc) -> FData:
    ctx, W, X, _ = document_context(doc)
    if "f" not in doc:
        raise DataFormatError('F data need an "f" table')
    series = _indexed_series(ctx, X, doc["f"], '"f"')
    return FData(ctx, W, X, series[0], tuple(series[1:]))


def cauchy_from_document(doc):
    """Plain data: F(x;0) under key "0", d_k F|_0 under "k"."""
    ctx, W, X, _ = document_context(doc)
    if "cauchy" not in doc:
        raise DataFormatError('plain data need a "cauchy" table')
    series = _indexed_series(ctx, X, doc["cauchy"], '"cauchy"')
    return ctx, W, X, series[0], tuple(series[1:])


def tau_data_to_document(data: TauData, z_order=0) -> dict:
    return {
        "hbar": hbar_to_json(data.ctx),
        "caps": caps_to_json(data.weight_cap, data.x_cap, z_order),
        "c": {str(k): xseries_to_json(s) for k, s in enumerate(data.c)},
    }


def f_data_to_document(data: FData, z_order=0) -> dict:
    table = {"0": xseries_to_json(data.f0)}
    for k in range(1, data.K + 1):
        table[str(k)] = xseries_to_json(data.series(k))
    return {
        "hbar": hbar_to_json(data.ctx),
        "caps": caps_to_json(data.weight_cap, data.x_cap, z_order),
        "f": table,
    }


def tau_series_to_document(ts: TauSeries, z_order=0) -> dict:
    return {
        "hbar": hbar_to_json(ts.ctx),
        "caps": caps_to_json(ts.weight_cap, ts.x_cap, z_order),
        "c_lambda": {
            lam.serialize(): xseries_to_json(s)
            for lam, s in sorted(ts.table.items(), key=lambda kv: (kv[0].weight, kv[0]))
        },
    }


def tau_series_from_document(doc) -> TauSeries:
    ctx, W, X, _ = document_context(doc)
    if "c_lambda" not in doc:
        raise DataFormatError('tau table needs a "c_lambda" map')
    table = {}
    for key, lst in doc["c_lambda"].items():
        lam = Partition.parse(key)
        table[lam] = xseries_from_json(ctx, X, lst)
    return TauSeries(ctx, W, X, table)


def f_series_to_document(fs: FSeries, z_order=0, basis="t_hbar") -> dict:
    table = {}
    for lam, val in sorted(fs.table.items(), key=lambda kv: (kv[0].weight, kv[0])):
        if fs.symbolic:
            table[lam.serialize()] = val.render()
        else:
            table[lam.serialize()] = xseries_to_json(val)
    doc = {
        "hbar": hbar_to_json(fs.ctx),
        "caps": caps_to_json(fs.weight_cap, fs.x_cap, z_order),
        "basis": basis,
        "mode": "symbolic" if fs.symbolic else "concrete",
        "f_lambda": table,
    }
    if fs.f0 is not None:
        doc["f0"] = xseries_to_json(fs.f0)
    return doc


def f_series_from_document(doc) -> FSeries:
    ctx, W, X, _ = document_context(doc)
    if doc.get("mode") != "concrete":
        raise DataFormatError("only concrete F tables can be reloaded")
    table = {
        Partition.parse(key): xseries_from_json(ctx, X, lst)
        for key, lst in doc["f_lambda"].items()
    }
    f0 = xseries_from_json(ctx, X, doc.get("f0", ["0"]))
    basis = doc.get("basis", "t_hbar")
    if basis == "t_plain":
        from .fbuild import f_series_from_plain_table

        try:
            return f_series_from_plain_table(ctx, W, X, f0, table)
        except KeyError as exc:
            raise DataFormatError(str(exc)) from exc
    if basis != "t_hbar":
        raise DataFormatError(f"unknown basis tag {basis!r}")
    return FSeries(ctx, W, X, f0, table, symbolic=False)


def dump(doc, path=None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def load(path) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"invalid JSON in {path}: {exc}") from exc
