"""Closed-form answer tables, evaluated from a transcribed fixture.

The fixture ``data/tables.json`` stores every case of every table as
boolean expressions in the parameters and the degree ``q``.  Lookups
return an ``AbelianGroup`` or ``OUT_OF_RANGE`` when no case applies.
"""
from __future__ import annotations

import ast
import json
from functools import lru_cache
from importlib import resources
from typing import Mapping

from .linalg import AbelianGroup


class _OutOfRange:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OUT_OF_RANGE"

    def __str__(self) -> str:
        return "outside published table"

    def __bool__(self) -> bool:
        return False


OUT_OF_RANGE = _OutOfRange()

_ALLOWED = (
    ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.USub, ast.Not,
    ast.BinOp, ast.Add, ast.Sub, ast.Mult, ast.Mod, ast.Compare, ast.Eq, ast.NotEq,
    ast.Lt, ast.LtE, ast.Gt, ast.GtE, ast.In, ast.Name, ast.Load, ast.Constant, ast.Tuple,
)


@lru_cache(maxsize=None)
def _compile(expr: str):
    tree = ast.parse(expr, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"disallowed syntax {type(node).__name__} in {expr!r}")
    return compile(tree, "<table>", "eval")


def evaluate(expr: str, env: Mapping[str, int]):
    return eval(_compile(expr), {"__builtins__": {}, "True": True, "False": False}, dict(env))


@lru_cache(maxsize=1)
def fixture() -> dict:
    text = resources.files("q8mackey").joinpath("data/tables.json").read_text(encoding="utf-8")
    return json.loads(text)


def table_ids() -> list[str]:
    return sorted(fixture()["tables"])


def resolve(table_id: str, params: Mapping[str, object]) -> str:
    """Map a family name plus parameters to a fixture key.

    ``AFamily`` takes ``variant`` in {A+, A+dual, A-, A-dual}; ``ThetaPos`` and
    ``ThetaNeg`` take ``sign`` and pick the m-regime themselves."""
    tables = fixture()["tables"]
    if table_id in tables:
        return table_id
    if table_id == "AFamily":
        return f"AFamily:{params['variant']}"
    if table_id in ("ThetaPos", "ThetaNeg"):
        regime = "m<=0" if int(params["m"]) <= 0 else "m>0"
        return f"{table_id}:{params['sign']}:{regime}"
    raise KeyError(f"unknown table {table_id!r}")


def _env(key: str, params: Mapping[str, object]) -> dict[str, int]:
    spec = fixture()["tables"][key]
    env = {}
    for p in spec["params"]:
        if p not in params:
            raise ValueError(f"table {key} needs parameter {p!r}")
        env[p] = int(params[p])
    if not evaluate(spec["domain"], env):
        raise ValueError(f"parameters {env} outside the domain of {key} ({spec['domain']})")
    return env


def lookup(table_id: str, params: Mapping[str, object], q: int):
    key = resolve(table_id, params)
    env = _env(key, params)
    return _lookup_key(key, env, q)


def _lookup_key(key: str, env: Mapping[str, int], q: int):
    spec = fixture()["tables"][key]
    if "sum" in spec:
        total = AbelianGroup()
        for part in spec["sum"]:
            sub_env = {k: evaluate(v, env) for k, v in part["params"].items()}
            shift = evaluate(part["shift"], env)
            value = _lookup_key(part["table"], sub_env, q - shift)
            if value is OUT_OF_RANGE:
                return OUT_OF_RANGE
            total = total + value
        return total
    full = dict(env, q=q)
    for case in spec["cases"]:
        if any(evaluate(alt, full) for alt in case["when"]):
            return AbelianGroup.parse(case["value"])
    return OUT_OF_RANGE


def window(table_id: str, params: Mapping[str, object]) -> range:
    key = resolve(table_id, params)
    env = _env(key, params)
    lo, hi = (evaluate(e, env) for e in fixture()["tables"][key]["window"])
    return range(lo, hi + 1)


def full_table(table_id: str, params: Mapping[str, object]) -> list[tuple[int, object]]:
    """Every degree of the table's window with its value or ``OUT_OF_RANGE``."""
    key = resolve(table_id, params)
    env = _env(key, params)
    return [(q, _lookup_key(key, env, q)) for q in window(table_id, params)]
