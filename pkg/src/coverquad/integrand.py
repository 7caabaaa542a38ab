"""Gaussian-mixture probability distribution maps and their raster form.

The density is the mean of G bivariate Gaussians,

    p(x) = (1/G) * sum_i exp(-0.5 (x-mu_i)^T sigma_i^-1 (x-mu_i))
                   / sqrt(4 pi^2 det sigma_i)

so each component integrates to 1 over the plane and the mixture carries unit
total mass. Mixtures are immutable after construction and evaluation is pure,
so instances are safe to share between threads.
"""

from __future__ import annotations

import json
import math

import numpy as np
from scipy import ndimage


class GaussianComponent:
    """Single bivariate Gaussian with mean ``mu`` and covariance ``sigma``."""

    def __init__(self, mu, sigma):
        mu = np.asarray(mu, dtype=float).reshape(2)
        sigma = np.asarray(sigma, dtype=float).reshape(2, 2)
        if not np.allclose(sigma, sigma.T, rtol=0, atol=1e-12 * max(1.0, np.abs(sigma).max())):
            raise ValueError("covariance must be symmetric")
        det = float(np.linalg.det(sigma))
        if det <= 0 or np.trace(sigma) <= 0:
            raise ValueError("non-positive-definite covariance")
        self.mu = mu
        self.sigma = sigma
        self._inv = np.linalg.inv(sigma)
        self._norm = 1.0 / math.sqrt(4.0 * math.pi**2 * det)
        self.mu.setflags(write=False)
        self.sigma.setflags(write=False)

    def density(self, points):
        d = np.atleast_2d(np.asarray(points, dtype=float)) - self.mu
        quad = (
            d[:, 0] ** 2 * self._inv[0, 0]
            + 2.0 * d[:, 0] * d[:, 1] * self._inv[0, 1]
            + d[:, 1] ** 2 * self._inv[1, 1]
        )
        return self._norm * np.exp(-0.5 * quad)


class GaussianMixturePdm:
    """Probability distribution map: equal-weight mixture over a bounded domain."""

    def __init__(self, components, bounds):
        if len(components) < 1:
            raise ValueError("mixture needs at least one component")
        xmin, ymin, xmax, ymax = (float(v) for v in bounds)
        if xmax <= xmin or ymax <= ymin:
            raise ValueError("empty domain bounds")
        self.components = tuple(components)
        self.bounds = (xmin, ymin, xmax, ymax)
        # stacked parameters so evaluation is one exp over all components
        self._mus = np.stack([c.mu for c in self.components])  # (G, 2)
        self._invs = np.stack([c._inv for c in self.components])  # (G, 2, 2)
        self._norms = np.array([c._norm for c in self.components])  # (G,)
        # quadratic forms expanded into monomial coefficients so evaluation
        # is one (n, 6) x (6, G) product followed by one exp
        coeffs = np.empty((6, len(self.components)))
        for i, c in enumerate(self.components):
            (sxx, sxy), (_, syy) = c._inv
            mx, my = c.mu
            coeffs[:, i] = (
                sxx,
                2.0 * sxy,
                syy,
                -2.0 * (sxx * mx + sxy * my),
                -2.0 * (sxy * mx + syy * my),
                sxx * mx * mx + 2.0 * sxy * mx * my + syy * my * my,
            )
        self._coeffs = coeffs
        self._out_weights = self._norms / len(self.components)

    @property
    def g(self):
        return len(self.components)

    def __call__(self, points):
        p = np.asarray(points, dtype=float)
        if p.ndim == 1:
            p = p[None, :]
        x, y = p[:, 0], p[:, 1]
        mono = np.empty((p.shape[0], 6))
        mono[:, 0] = x * x
        mono[:, 1] = x * y
        mono[:, 2] = y * y
        mono[:, 3] = x
        mono[:, 4] = y
        mono[:, 5] = 1.0
        quad = mono @ self._coeffs  # (n, G)
        return np.exp(-0.5 * quad) @ self._out_weights

    def to_json_dict(self):
        return {
            "components": [
                {"mu": c.mu.tolist(), "sigma": c.sigma.tolist()}
                for c in self.components
            ],
            "bounds": list(self.bounds),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc):
        comps = [GaussianComponent(e["mu"], e["sigma"]) for e in doc["components"]]
        return cls(comps, doc["bounds"])

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


def eval_pdm(pdm, x):
    """Density of the mixture at a single point."""
    return float(pdm([x])[0])


class RasterGrid:
    """N x M field of densities sampled at cell centers of a bounding box.

    Row i corresponds to y = ymin + (i + 1/2) dy, column j to
    x = xmin + (j + 1/2) dx.
    """

    def __init__(self, values, bounds):
        values = np.asarray(values, dtype=float)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError("raster values must be a non-empty 2D matrix")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError("raster values must be finite and non-negative")
        xmin, ymin, xmax, ymax = (float(v) for v in bounds)
        if xmax <= xmin or ymax <= ymin:
            raise ValueError("empty raster bounds")
        self.values = values
        self.bounds = (xmin, ymin, xmax, ymax)
        self.dx = (xmax - xmin) / values.shape[1]
        self.dy = (ymax - ymin) / values.shape[0]
        self.values.setflags(write=False)

    @property
    def shape(self):
        return self.values.shape

    def cell_centers(self):
        xmin, ymin, _, _ = self.bounds
        n, m = self.values.shape
        xs = xmin + (np.arange(m) + 0.5) * self.dx
        ys = ymin + (np.arange(n) + 0.5) * self.dy
        return xs, ys

    def to_csv(self, path):
        n, m = self.values.shape
        xmin, ymin, xmax, ymax = self.bounds
        header = f"{n},{m},{xmin},{ymin},{xmax},{ymax}"
        np.savetxt(path, self.values, delimiter=",", header=header, comments="")

    @classmethod
    def from_csv(cls, path):
        with open(path) as f:
            first = f.readline().strip().split(",")
            n, m = int(first[0]), int(first[1])
            bounds = tuple(float(v) for v in first[2:6])
            values = np.loadtxt(f, delimiter=",").reshape(n, m)
        return cls(values, bounds)


class Kernel3x3:
    def __init__(self, weights):
        w = np.asarray(weights, dtype=float)
        if w.shape != (3, 3) or not np.all(np.isfinite(w)):
            raise ValueError("kernel must be a finite 3x3 matrix")
        self.weights = w
        self.weights.setflags(write=False)

    @classmethod
    def box(cls):
        """Normalized box blur, the planner's default tie-break kernel."""
        return cls(np.full((3, 3), 1.0 / 9.0))

    @classmethod
    def identity(cls):
        w = np.zeros((3, 3))
        w[1, 1] = 1.0
        return cls(w)


def rasterize(pdm, n, m, bounds=None):
    """Sample the mixture at the N x M cell centers of the bounds box."""
    if n < 1 or m < 1:
        raise ValueError("raster dimensions must be >= 1")
    if bounds is None:
        bounds = pdm.bounds
    xmin, ymin, xmax, ymax = (float(v) for v in bounds)
    if xmax <= xmin or ymax <= ymin:
        raise ValueError("empty raster bounds")
    xs = xmin + (np.arange(m) + 0.5) * (xmax - xmin) / m
    ys = ymin + (np.arange(n) + 0.5) * (ymax - ymin) / n
    xx, yy = np.meshgrid(xs, ys)
    values = pdm(np.column_stack([xx.ravel(), yy.ravel()])).reshape(n, m)
    return RasterGrid(values, bounds)


def convolve3x3(grid, kernel):
    """3x3 convolution of the raster, zero padding outside the border."""
    if grid.values.shape[0] < 3 or grid.values.shape[1] < 3:
        raise ValueError("grid must be at least 3x3")
    out = ndimage.convolve(grid.values, kernel.weights, mode="constant", cval=0.0)
    return RasterGrid(np.maximum(out, 0.0), grid.bounds)


def random_pdm(seed, g, bounds, eig_range=(5.0, 20.0)):
    """Deterministic random mixture: means uniform in the bounds, covariances
    built as R^T diag(e1, e2) R with a uniform rotation angle in [0, pi) and
    eigenvalues uniform in ``eig_range`` (m^2).

    Randomness comes from numpy's Philox counter-based generator, so a seed
    fully reproduces the mixture on any platform.
    """
    if g < 1:
        raise ValueError("need at least one component")
    xmin, ymin, xmax, ymax = (float(v) for v in bounds)
    rng = np.random.Generator(np.random.Philox(seed))
    comps = []
    for _ in range(g):
        mu = rng.uniform([xmin, ymin], [xmax, ymax])
        angle = rng.uniform(0.0, math.pi)
        eigs = rng.uniform(eig_range[0], eig_range[1], size=2)
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[c, -s], [s, c]])
        sigma = rot.T @ np.diag(eigs) @ rot
        sigma = 0.5 * (sigma + sigma.T)  # kill roundoff asymmetry
        comps.append(GaussianComponent(mu, sigma))
    return GaussianMixturePdm(comps, (xmin, ymin, xmax, ymax))
