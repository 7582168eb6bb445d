import pathlib

import pytest

from rayoracle.scene import load_scene

SCENES = pathlib.Path(__file__).resolve().parent.parent / "scenes"

CONFIG1 = SCENES / "config1.scene"
CONFIG2 = SCENES / "config2.scene"

CONFIG1_PARAMS = ((0, 1, 0, 1), (0, 3, 2, 2), (1, 1, 3, 3), (3, 3, 3, 3))
CONFIG2_PARAMS = (
    (1, 3, 1, 2),
    (6, 6, 1, 4),
    (0, 3, 7, 7),
    (7, 7, 0, 0),
    (1, 2, 4, 5),
    (4, 4, 0, 2),
    (4, 4, 4, 7),
    (7, 7, 5, 7),
)


@pytest.fixture
def config1():
    return load_scene(CONFIG1)


@pytest.fixture
def config2():
    return load_scene(CONFIG2)
