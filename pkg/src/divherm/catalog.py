"""Standard planes used by the test suites and the CLI."""

from .algebras import make_quaternion
from .plane import HyperbolicPlane, make_field_plane
from .example7 import build_example, involuted_example_plane


def field_plane_disc_minus7():
    # theta = (1 + sqrt(-7))/2, theta^2 - theta + 2 = 0
    return make_field_plane(
        "Q(sqrt-7)", [2, -1, 1], bar_image=[1, -1], s_coords=[-1, 2], eta=7
    )


def field_plane_disc_minus5():
    # theta = sqrt(-5)
    return make_field_plane(
        "Q(sqrt-5)", [5, 0, 1], bar_image=[0, -1], s_coords=[0, 1], eta=5
    )


def field_plane_disc_minus23():
    # theta = (1 + sqrt(-23))/2, theta^2 - theta + 6 = 0
    return make_field_plane(
        "Q(sqrt-23)", [6, -1, 1], bar_image=[1, -1], s_coords=[-1, 2], eta=23
    )


def quaternion_plane(a=2, b=3):
    return HyperbolicPlane(make_quaternion(a, b))


def example_plane():
    """The worked degree-3 plane carrying the second-kind involution."""
    return involuted_example_plane()


def example_algebra():
    """The worked degree-3 cyclic algebra itself (no involution data)."""
    _, algebra, _ = build_example()
    return algebra
