"""
Binary checkpoint I/O.

Layout, all little-endian: 8-byte magic ``MRSAVGFD``, u32 version, u32 dim,
dim x u32 modes, dim x f64 lengths, f64 t, k, gamma, q^n, q^{n-1}, u64 n,
then omega^n and omega^{n-1} as complex128 (re, im) pairs in row-major
signed-index order (most negative index first on every axis).
"""
import os
import struct
from pathlib import Path
from typing import Optional

import numpy as np
import structlog
from pydantic import ValidationError

from mrsav_gfd.errors import CheckpointFormatError, CheckpointShapeError, CheckpointTruncatedError
from mrsav_gfd.models.checkpoint import Checkpoint
from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.spectral_field import FieldRole, SpectralField
from mrsav_gfd.models.stepper import TwoLevelState
from mrsav_gfd.services.interfaces import CheckpointServiceInterface

logger = structlog.get_logger(__name__)

MAGIC = b"MRSAVGFD"
VERSION = 1
PREAMBLE = struct.Struct("<8sII")
SCALARS = struct.Struct("<5dQ")
COEFF_DTYPE = np.dtype("<c16")


class CheckpointService(CheckpointServiceInterface):
    """
    Reads and writes two-level solver states bit-exactly.
    """

    def write(self, path: Path, grid: Grid, k: float, gamma: float, state: TwoLevelState) -> Path:
        """
        Write a checkpoint atomically (temporary file, then rename).

        Args:
            path: Destination file
            grid: Grid of the state
            k: Time step the state was produced with
            gamma: SAV relaxation rate
            state: State to store

        Returns:
            The written path
        """
        path = Path(path)
        dim = grid.dim
        header = (
            PREAMBLE.pack(MAGIC, VERSION, dim)
            + struct.pack(f"<{dim}I", *grid.modes)
            + struct.pack(f"<{dim}d", *grid.lengths)
            + SCALARS.pack(state.time, k, gamma, state.q_curr, state.q_prev, state.step_index)
        )
        body = b"".join(
            np.ascontiguousarray(np.fft.fftshift(field.coeffs), dtype=COEFF_DTYPE).tobytes()
            for field in (state.u_curr, state.u_prev)
        )
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "wb") as f:
            f.write(header)
            f.write(body)
        os.replace(tmp, path)
        logger.debug("checkpoint written", path=str(path), step=state.step_index)
        return path

    def read(self, path: Path, expected_grid: Optional[Grid] = None) -> Checkpoint:
        """
        Read and validate a checkpoint.

        Args:
            path: Checkpoint file
            expected_grid: If given, the stored grid must equal it

        Returns:
            The stored grid, k, gamma and state

        Raises:
            CheckpointFormatError: Bad magic, unknown version or trailing bytes
            CheckpointTruncatedError: The file ends before the declared payload
            CheckpointShapeError: The stored grid differs from expected_grid
        """
        path = Path(path)
        data = path.read_bytes()
        if len(data) < PREAMBLE.size:
            raise CheckpointTruncatedError(path, f"file has {len(data)} bytes, header needs {PREAMBLE.size}")
        magic, version, dim = PREAMBLE.unpack_from(data, 0)
        if magic != MAGIC:
            raise CheckpointFormatError(path, f"bad magic {magic!r}, not a checkpoint")
        if version != VERSION:
            raise CheckpointFormatError(path, f"unsupported checkpoint version {version}")
        if dim not in (2, 3):
            raise CheckpointFormatError(path, f"unsupported dimension {dim}")

        offset = PREAMBLE.size
        header_size = offset + dim * 4 + dim * 8 + SCALARS.size
        if len(data) < header_size:
            raise CheckpointTruncatedError(path, f"header needs {header_size} bytes, file has {len(data)}")
        modes = struct.unpack_from(f"<{dim}I", data, offset)
        offset += dim * 4
        lengths = struct.unpack_from(f"<{dim}d", data, offset)
        offset += dim * 8
        time, k, gamma, q_curr, q_prev, step_index = SCALARS.unpack_from(data, offset)
        offset += SCALARS.size

        try:
            grid = Grid(dim=dim, lengths=lengths, modes=modes)
        except ValidationError as error:
            raise CheckpointFormatError(path, f"invalid grid in header: {error.errors()[0]['msg']}") from error
        if expected_grid is not None and grid != expected_grid:
            raise CheckpointShapeError(
                path, f"stored grid modes={grid.modes} lengths={grid.lengths} does not match "
                      f"modes={expected_grid.modes} lengths={expected_grid.lengths}"
            )

        count = grid.point_count
        body_size = 2 * count * COEFF_DTYPE.itemsize
        if len(data) < offset + body_size:
            raise CheckpointTruncatedError(path, f"expected {offset + body_size} bytes, file has {len(data)}")
        if len(data) > offset + body_size:
            raise CheckpointFormatError(path, f"{len(data) - offset - body_size} trailing bytes after payload")

        fields = []
        for level in range(2):
            start = offset + level * count * COEFF_DTYPE.itemsize
            shifted = np.frombuffer(data, dtype=COEFF_DTYPE, count=count, offset=start).reshape(grid.shape)
            coeffs = np.fft.ifftshift(shifted).astype(complex)
            fields.append(SpectralField(grid=grid, coeffs=coeffs, role=FieldRole.VORTICITY))

        state = TwoLevelState(
            u_curr=fields[0], u_prev=fields[1], q_curr=q_curr, q_prev=q_prev, step_index=step_index, time=time
        )
        logger.debug("checkpoint read", path=str(path), step=step_index)
        return Checkpoint(grid=grid, k=k, gamma=gamma, state=state)
