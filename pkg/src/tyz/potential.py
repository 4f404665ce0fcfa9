"""A small expression language for Kähler potentials.

Expressions use the variables ``z1 .. zn`` (``z`` alone when ``n == 1``),
``conj(...)``, ``norm2(z)`` for ``sum |z_i|^2``, the functions ``exp`` and
``log``, numeric constants and the operators ``+ - * / ^`` (``**`` also works).
Parsing goes through :mod:`ast`; only the nodes listed above are accepted.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from typing import Any, Callable

from . import jets


class ExpressionError(ValueError):
    pass


_VAR = re.compile(r"^z(\d*)$")
_FUNCS = ("exp", "log", "conj", "norm2")


@dataclass(frozen=True)
class PotentialExpression:
    source: str
    dim: int
    tree: ast.expr

    def evaluate(self, holo: list, anti: list, ops: "Ops") -> Any:
        """Evaluate with ``holo[i]`` standing for ``z_i`` and ``anti[i]`` for ``conj(z_i)``."""
        return _Evaluator(self, holo, anti, ops).visit(self.tree)


@dataclass(frozen=True)
class Ops:
    exp: Callable
    log: Callable
    conj: Callable


def parse_potential(text: str, dim: int) -> PotentialExpression:
    if dim < 1:
        raise ExpressionError(f"dimension must be >= 1, got {dim}")
    try:
        # '^' must bind like '**', not like Python's low-precedence xor
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse potential {text!r}: {exc.msg}") from exc
    _check(tree, dim)
    return PotentialExpression(text, dim, tree)


def _var_index(name: str, dim: int) -> int:
    m = _VAR.match(name)
    if not m:
        raise ExpressionError(f"unknown name {name!r}")
    if m.group(1) == "":
        if dim != 1:
            raise ExpressionError("bare 'z' is only allowed in dimension 1; use z1..zn")
        return 0
    k = int(m.group(1))
    if not 1 <= k <= dim:
        raise ExpressionError(f"variable {name} out of range for dimension {dim}")
    return k - 1


def _check(node: ast.AST, dim: int) -> None:
    if isinstance(node, ast.BinOp):
        if not isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)):
            raise ExpressionError(f"operator {type(node.op).__name__} not supported")
        _check(node.left, dim)
        _check(node.right, dim)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.USub, ast.UAdd)):
            raise ExpressionError(f"operator {type(node.op).__name__} not supported")
        _check(node.operand, dim)
    elif isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS:
            raise ExpressionError(f"unknown function in {ast.unparse(node)!r}")
        if len(node.args) != 1 or node.keywords:
            raise ExpressionError(f"{node.func.id} takes exactly one argument")
        arg = node.args[0]
        if node.func.id == "norm2":
            if not (isinstance(arg, ast.Name) and arg.id == "z"):
                raise ExpressionError("norm2 only accepts the vector 'z'")
        else:
            _check(arg, dim)
    elif isinstance(node, ast.Name):
        _var_index(node.id, dim)
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float, complex)) or isinstance(node.value, bool):
            raise ExpressionError(f"unsupported constant {node.value!r}")
    else:
        raise ExpressionError(f"unsupported syntax: {ast.unparse(node)!r}")


class _Evaluator(ast.NodeVisitor):
    def __init__(self, expr: PotentialExpression, holo, anti, ops: Ops):
        self.expr, self.holo, self.anti, self.ops = expr, holo, anti, ops

    def visit_BinOp(self, node):
        a, b = self.visit(node.left), self.visit(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        if isinstance(op, ast.Mult):
            return a * b
        if isinstance(op, ast.Div):
            return a / b
        return a**b

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        return -v if isinstance(node.op, ast.USub) else v

    def visit_Call(self, node):
        name = node.func.id
        if name == "norm2":
            return sum(h * a for h, a in zip(self.holo, self.anti))
        if name == "conj":
            arg = node.args[0]
            # conj of a variable is the matching anti-holomorphic variable
            if isinstance(arg, ast.Name):
                return self.anti[_var_index(arg.id, self.expr.dim)]
            return self.ops.conj(self.visit(arg))
        return getattr(self.ops, name)(self.visit(node.args[0]))

    def visit_Name(self, node):
        return self.holo[_var_index(node.id, self.expr.dim)]

    def visit_Constant(self, node):
        return node.value


def _scalar_conj(x):
    return complex(x).conjugate()


SCALAR_OPS = Ops(exp=jets.exp, log=jets.log, conj=_scalar_conj)


def evaluate_at(expr: PotentialExpression, point) -> complex:
    point = [complex(p) for p in point]
    return complex(expr.evaluate(point, [p.conjugate() for p in point], SCALAR_OPS))
