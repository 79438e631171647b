from __future__ import annotations

import argparse
import logging
import math
from functools import partial

import numpy as np

from app.commands.common import add_common_arguments, output_path, require_config
from app.core.config import settings
from app.core.errors import CausticSingularity, UnsupportedPotential
from app.repositories.artifacts import make_header, write_csv
from app.schemas.grid import GridSpec
from app.schemas.run_config import RunConfig
from app.services.closed_kernels import free_kernel, harmonic_kernel, kernel_matrix_from_closed_form
from app.services.numerics import KernelMatrix
from app.services.trotter import TrotterPlan, composed_kernel, spectral_oracle_kernel

logger = logging.getLogger(__name__)

KERNEL_COLUMNS = ("x", "y", "t", "abs", "phase", "method")


def register(subparsers) -> None:
    parser = subparsers.add_parser("kernel", help="kernel moduli and phases over the central window")
    add_common_arguments(parser)
    parser.set_defaults(func=cmd_kernel)


def _grid_for(config: RunConfig, t: float) -> GridSpec:
    if config.matched:
        return GridSpec.matched(config.grid.n_points, t, config.units, config.grid.center)
    return config.grid


def _guard_caustic(config: RunConfig, t: float) -> None:
    V = config.potential
    if V.kind == "harmonic" and abs(math.sin(V.omega * t)) <= settings.CAUSTIC_TOL:
        raise CausticSingularity(f"harmonic kernel undefined at t={t!r} (omega t on a multiple of pi)")


def build_kernel(config: RunConfig, t: float) -> KernelMatrix:
    _guard_caustic(config, t)
    grid = _grid_for(config, t)
    V, units = config.potential, config.units
    if config.method == "oracle":
        return spectral_oracle_kernel(grid, V, t, units)
    if config.method == "trotter":
        return composed_kernel(grid, V, TrotterPlan(t, config.n_slices), units, config.slice_rule)
    if V.kind == "free":
        return kernel_matrix_from_closed_form(grid, partial(_free, units=units), t)
    if V.kind == "harmonic":
        return kernel_matrix_from_closed_form(grid, partial(_harmonic, omega=V.omega, units=units), t)
    raise UnsupportedPotential(f"no closed-form kernel for {V.label}")


def _free(x, y, t, *, units):
    return free_kernel(x, y, t, units)


def _harmonic(x, y, t, *, omega, units):
    return harmonic_kernel(x, y, t, omega, units)


def kernel_rows(K: KernelMatrix, window: float):
    w = K.grid.central_window(window)
    x = K.grid.points()[w]
    block = K.continuum()[w, w]
    method = K.method
    for i, xi in enumerate(x):
        for j, yj in enumerate(x):
            value = block[i, j]
            yield (float(xi), float(yj), float(K.t), float(abs(value)), float(np.angle(value)), method)


def cmd_kernel(args: argparse.Namespace) -> int:
    config = require_config(args)
    header = make_header(config.model_dump(mode="json"), config.seed)
    rows = []
    for t in config.t_list:
        K = build_kernel(config, t)
        rows.extend(kernel_rows(K, config.window))
        logger.info("kernel t=%g method=%s on %d points", t, K.method, K.grid.n_points)
    write_csv(output_path(args, config), header, KERNEL_COLUMNS, rows)
    return 0
