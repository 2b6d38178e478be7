import numpy as np
import pytest
from pytest import fixture

from mrsav_gfd.errors import (
    CheckpointError, CheckpointFormatError, CheckpointShapeError, CheckpointTruncatedError
)
from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.stepper import TwoLevelState
from mrsav_gfd.services.checkpoint_service import CheckpointService
from mrsav_gfd.services.spectral_service import SpectralService


@fixture
def service():
    return CheckpointService()


def random_state(grid, seed=0):
    spectral = SpectralService(grid)
    rng = np.random.default_rng(seed)
    newest = spectral.forward(rng.standard_normal(grid.shape))
    older = spectral.forward(rng.standard_normal(grid.shape))
    return TwoLevelState(
        u_curr=newest, u_prev=older, q_curr=0.1 + 0.2, q_prev=1.0 / 3.0, step_index=1234, time=12.34
    )


def assert_bit_equal(left, right):
    for a, b in ((left.u_curr, right.u_curr), (left.u_prev, right.u_prev)):
        assert np.array_equal(a.coeffs.view(np.uint64), b.coeffs.view(np.uint64))
    assert (left.q_curr, left.q_prev, left.step_index, left.time) == \
        (right.q_curr, right.q_prev, right.step_index, right.time)


class DescribeCheckpointService:

    def should_round_trip_a_state_bit_exactly(self, service, tmp_path, grid16):
        state = random_state(grid16)

        path = service.write(tmp_path / "a.ckpt", grid16, 0.01, 1000.0, state)
        restored = service.read(path, expected_grid=grid16)

        assert restored.grid == grid16
        assert (restored.k, restored.gamma) == (0.01, 1000.0)
        assert_bit_equal(restored.state, state)

    def should_round_trip_anisotropic_three_dimensional_grids(self, service, tmp_path):
        grid = Grid(dim=3, lengths=(1.0, 2.0, 3.0), modes=(4, 6, 8))
        state = random_state(grid, seed=9)

        restored = service.read(service.write(tmp_path / "b.ckpt", grid, 0.5, 0.0, state))

        assert restored.grid == grid
        assert_bit_equal(restored.state, state)

    def should_store_coefficients_in_signed_index_order(self, service, tmp_path, grid16):
        state = random_state(grid16)
        path = service.write(tmp_path / "c.ckpt", grid16, 0.01, 1.0, state)
        body_offset = 16 + 2 * 4 + 2 * 8 + 48

        first = np.frombuffer(path.read_bytes(), dtype="<c16", count=1, offset=body_offset)[0]

        assert first == state.u_curr.coeffs[grid16.index_of((-8, -8))]

    def should_leave_no_temporary_file(self, service, tmp_path, grid16):
        service.write(tmp_path / "d.ckpt", grid16, 0.01, 1.0, random_state(grid16))

        assert [p.name for p in tmp_path.iterdir()] == ["d.ckpt"]

    def should_reject_a_truncated_file(self, service, tmp_path, grid16):
        path = service.write(tmp_path / "e.ckpt", grid16, 0.01, 1.0, random_state(grid16))
        path.write_bytes(path.read_bytes()[:-10])

        with pytest.raises(CheckpointTruncatedError):
            service.read(path)

    def should_reject_a_file_shorter_than_the_preamble(self, service, tmp_path):
        path = tmp_path / "tiny.ckpt"
        path.write_bytes(b"MRSAV")

        with pytest.raises(CheckpointTruncatedError):
            service.read(path)

    def should_reject_a_bad_magic(self, service, tmp_path, grid16):
        path = service.write(tmp_path / "f.ckpt", grid16, 0.01, 1.0, random_state(grid16))
        path.write_bytes(b"NOTACKPT" + path.read_bytes()[8:])

        with pytest.raises(CheckpointFormatError, match="magic"):
            service.read(path)

    def should_reject_trailing_bytes(self, service, tmp_path, grid16):
        path = service.write(tmp_path / "g.ckpt", grid16, 0.01, 1.0, random_state(grid16))
        path.write_bytes(path.read_bytes() + b"\0")

        with pytest.raises(CheckpointFormatError, match="trailing"):
            service.read(path)

    def should_reject_a_grid_mismatch(self, service, tmp_path, grid16):
        path = service.write(tmp_path / "h.ckpt", grid16, 0.01, 1.0, random_state(grid16))

        with pytest.raises(CheckpointShapeError):
            service.read(path, expected_grid=Grid(modes=32))

    def should_report_the_offending_path(self, service, tmp_path):
        path = tmp_path / "junk.ckpt"
        path.write_bytes(b"\0" * 64)

        with pytest.raises(CheckpointError) as raised:
            service.read(path)

        assert raised.value.path == path
