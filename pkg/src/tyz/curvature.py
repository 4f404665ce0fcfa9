"""Pointwise curvature of a Kähler potential and the first two TYZ coefficients.

Conventions (calibrated on the disk potential ``-log(1 - |z|^2)``, where they
give ``rho = -2`` and ``a1 = -1``):

    g_{i jb}       = d_i db_j Phi
    R_{i jb k lb}  = -d_k db_l g_{i jb} + g^{pb q} (d_k g_{i pb}) (db_l g_{q jb})
    Ric_{i jb}     = -d_i db_j log det g
    rho            = g^{jb i} Ric_{i jb}
    Laplacian f    = g^{jb i} d_i db_j f

The Laplacian normalization in ``a2 = Lap(rho)/3 + ...`` cannot be pinned by
any example with non-constant scalar curvature and is a convention choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jets import Jet, det, inverse, jet_space, log
from .jets import exp as jet_exp
from .potential import Ops, PotentialExpression, evaluate_at


class CurvatureError(ValueError):
    pass


@dataclass(frozen=True)
class CurvatureData:
    point: tuple[complex, ...]
    metric: np.ndarray
    inverse: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    rho: float
    norm_R_sq: float
    norm_Ric_sq: float
    lap_rho: float

    @property
    def dim(self) -> int:
        return len(self.point)


def _conj_map(space, n: int) -> np.ndarray:
    """Permutation sending monomial ``u^a v^b`` to ``u^b v^a``."""
    return np.array([space.index[m[n:] + m[:n]] for m in space.monomials])


def _polarized_ops(space, n: int) -> Ops:
    perm = _conj_map(space, n)

    def conj(x):
        if not isinstance(x, Jet):
            return complex(x).conjugate()
        out = np.empty_like(x.coeffs)
        out[perm] = x.coeffs.conj()
        return Jet(space, out, x.valid)

    return Ops(exp=jet_exp, log=log, conj=conj)


def potential_jet(phi: PotentialExpression, point, order: int) -> Jet:
    """Taylor jet of ``Phi`` at ``point`` in the displacements of ``z`` then ``conj z``."""
    n = phi.dim
    point = tuple(complex(p) for p in point)
    if len(point) != n:
        raise CurvatureError(f"point has {len(point)} coordinates, potential has dimension {n}")
    space = jet_space(2 * n, order)
    holo = [Jet.variable(space, i, point[i]) for i in range(n)]
    anti = [Jet.variable(space, n + i, point[i].conjugate()) for i in range(n)]
    try:
        with np.errstate(all="raise"):
            value = evaluate_at(phi, point)
            jet = phi.evaluate(holo, anti, _polarized_ops(space, n))
    except (ZeroDivisionError, FloatingPointError, OverflowError) as exc:
        raise CurvatureError(f"potential is singular at {point}: {exc}") from exc
    if not isinstance(jet, Jet):
        jet = Jet.constant(space, jet)
    if not np.all(np.isfinite(jet.coeffs)):
        raise CurvatureError(f"potential is singular at {point}")
    if abs(value.imag) >= 1e-12 * max(1.0, abs(value)):
        raise CurvatureError(f"potential is not real at {point}: value {value}")
    return jet


def curvature_at(phi: PotentialExpression, point, order: int = 6) -> CurvatureData:
    if order < 6:
        raise CurvatureError(f"jet order must be >= 6 for the Laplacian of rho, got {order}")
    n = phi.dim
    jet = potential_jet(phi, point, order)
    g = [[jet.deriv(i).deriv(n + j) for j in range(n)] for i in range(n)]
    G = np.array([[gij.value for gij in row] for row in g])
    if not np.allclose(G, G.conj().T, rtol=1e-10, atol=1e-12):
        raise CurvatureError(f"metric is not Hermitian at {point}")
    if np.linalg.eigvalsh((G + G.conj().T) / 2).min() <= 0:
        raise CurvatureError(f"metric is not positive definite at {point}")
    Ginv = np.linalg.inv(G)

    ginv = inverse(g)
    logdet = log(det(g))
    ric = [[-logdet.deriv(i).deriv(n + j) for j in range(n)] for i in range(n)]
    rho = sum(ginv[j][i] * ric[i][j] for i in range(n) for j in range(n))
    lap_rho = sum(Ginv[j, i] * rho.deriv(i).deriv(n + j).value for i in range(n) for j in range(n))

    dg = np.array([[[g[i][p].deriv(k).value for k in range(n)] for p in range(n)] for i in range(n)])
    dbg = np.array([[[g[q][j].deriv(n + l).value for l in range(n)] for j in range(n)] for q in range(n)])
    ddg = np.array(
        [
            [[[g[i][j].deriv(k).deriv(n + l).value for l in range(n)] for k in range(n)] for j in range(n)]
            for i in range(n)
        ]
    )
    # R[i,j,k,l] = -ddg[i,j,k,l] + sum_pq Ginv[p,q] dg[i,p,k] dbg[q,j,l]
    R = -ddg + np.einsum("pq,ipk,qjl->ijkl", Ginv, dg, dbg)
    Ric = np.array([[r.value for r in row] for row in ric])

    norm_R = np.einsum("jk,lm,pq,st,klqs,jmpt->", Ginv, Ginv, Ginv, Ginv, R, R.conj())
    norm_Ric = np.einsum("jk,lm,kl,jm->", Ginv, Ginv, Ric, Ric.conj())
    return CurvatureData(
        point=tuple(complex(p) for p in point),
        metric=G,
        inverse=Ginv,
        riemann=R,
        ricci=Ric,
        rho=float(rho.value.real),
        norm_R_sq=float(norm_R.real),
        norm_Ric_sq=float(norm_Ric.real),
        lap_rho=float(complex(lap_rho).real),
    )


def ricci_from_riemann(data: CurvatureData) -> np.ndarray:
    """``Ric_{i jb} = g^{lb k} R_{i jb k lb}``, the trace route."""
    return np.einsum("lk,ijkl->ij", data.inverse, data.riemann)


def lu_coefficients_at(data: CurvatureData) -> tuple[float, float]:
    a1 = data.rho / 2
    a2 = data.lap_rho / 3 + (data.norm_R_sq - 4 * data.norm_Ric_sq + 3 * data.rho**2) / 24
    return a1, a2


def euler_integrand_at(data: CurvatureData) -> float:
    return data.norm_R_sq - 4 * data.norm_Ric_sq + data.rho**2


def curvature_row(data: CurvatureData) -> dict:
    a1, a2 = lu_coefficients_at(data)
    return {
        "point": [_fmt_complex(p) for p in data.point],
        "rho": data.rho,
        "norm_R_sq": data.norm_R_sq,
        "norm_Ric_sq": data.norm_Ric_sq,
        "lap_rho": data.lap_rho,
        "a1": a1,
        "a2": a2,
        "euler_integrand": euler_integrand_at(data),
    }


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r}{z.imag:+}j"
