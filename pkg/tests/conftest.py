import numpy as np
import pytest

from app.core.fields import BoundarySpec
from app.core.problems import HeatProblem
from app.database import engine as db_engine
from app.services.storage import BenchStorage

REFERENCE_BC = BoundarySpec(600.0, 500.0, 194.0, 248.0)
REFERENCE_IC = 254.0
REFERENCE_LAMBDA = 0.27047


@pytest.fixture
def reference_problem() -> HeatProblem:
    """12x12, края (600, 500, 194, 248), НУ 254, λ=0.27047."""
    return HeatProblem((12, 12), REFERENCE_BC, REFERENCE_IC, REFERENCE_LAMBDA)


@pytest.fixture
def small_problem() -> HeatProblem:
    return HeatProblem((6, 5), BoundarySpec(10.0, 20.0, 30.0, 40.0), 5.0, 0.3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def storage():
    db_engine.init_db("sqlite://")
    bench_storage = BenchStorage()
    bench_storage.set_session_maker(db_engine.get_session_maker())
    yield bench_storage
    db_engine.close_db()
