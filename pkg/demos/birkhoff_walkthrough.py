"""Factor a disguised diagonal Laurent matrix and read off cohomology."""

import random

from tschirn.birkhoff import cohomology_dims, factorize, h0_oracle
from tschirn.suite import random_transition


def main():
    T, planted = random_transition(random.Random(3), 3, -4, 4)
    print("transition matrix:")
    for row in T.rows:
        print("  ", [str(a) for a in row])
    fac = factorize(T)
    print("planted", planted, "recovered", list(fac.exponents), "steps", fac.steps)
    for k in range(-2, 3):
        print(f"  k={k:+d}  h0/h1 {cohomology_dims(fac.exponents, k)}  oracle h0 {h0_oracle(T, k)}")


if __name__ == "__main__":
    main()
