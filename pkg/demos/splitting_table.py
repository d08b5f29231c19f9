"""Computed versus predicted splittings for a small grid of random curves."""

from tschirn import predict_thm_a, random_instance, verify_instance


def main():
    print(f"{'m':>2} {'e':>2} {'d':>2}  {'computed':<22} {'predicted':<22} genus")
    for delta in (0, 1):
        for m in (2, 3, 4):
            for e in (1, 2):
                X = random_instance(m, e, delta, f"demo:{m}:{e}:{delta}").curve
                rep = verify_instance(X)
                pred = list(predict_thm_a(m, e, delta).degrees)
                print(f"{m:>2} {e:>2} {delta:>2}  {str(rep.computed):<22} {str(pred):<22} {rep.genus['splitting']}")
                if rep.computed_twisted is not None:
                    print(f"{'':>10}twisted {rep.computed_twisted}")


if __name__ == "__main__":
    main()
