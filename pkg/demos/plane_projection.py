"""Project a plane quartic from a point off and on the curve."""

from tschirn.instances import plane_to_cox, random_plane_curve
from tschirn.verify import InvalidInstance, verify_plane


def first_smooth(m, through):
    for k in range(100):
        C = random_plane_curve(m, f"plane-demo:{k}", through_center=through)
        try:
            return C, verify_plane(C)
        except (InvalidInstance, ValueError):
            continue
    raise RuntimeError("no smooth sample found")


def main():
    for through in (False, True):
        C, rep = first_smooth(4, through)
        X, case = plane_to_cox(C)
        print(f"center on curve: {through}  case {case}  cover degree {X.m}  delta {X.delta}")
        print(f"  splitting {rep.computed}  twisted {rep.computed_twisted}  genus {rep.genus['splitting']}")


if __name__ == "__main__":
    main()
