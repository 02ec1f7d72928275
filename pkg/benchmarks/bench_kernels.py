"""Time the lattice kernels with numba and with the numpy fallback.

    python benchmarks/bench_kernels.py [--radius 1000] [--repeat 3]
"""
import argparse
import time

from llsgeom import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=1000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    R = args.radius
    if K.numba is None:
        print("numba is not installed; only the fallback can run")
    cases = {
        "form_abs_min x^2+xy-y^2": lambda nb: K.form_abs_min(1, 1, -1, R, use_numba=nb),
        "cone_points sqrt(2) wedge": lambda nb: K.cone_points(
            (0, 1, -1, 0), (0, 1, 1, 0), 2, min(R, 400), use_numba=nb),
    }
    # warm up the JIT so compile time is not measured
    for fn in cases.values():
        if K.numba is not None:
            fn(True)
    print(f"{'kernel':<28} {'numba (s)':>10} {'numpy (s)':>10} {'speedup':>8}")
    for name, fn in cases.items():
        t_np, r_np = best_of(lambda: fn(False), args.repeat)
        if K.numba is None:
            print(f"{name:<28} {'-':>10} {t_np:>10.4f} {'-':>8}")
            continue
        t_nb, r_nb = best_of(lambda: fn(True), args.repeat)
        same = all((a == b).all() if hasattr(a, "shape") else a == b for a, b in zip(r_nb, r_np))
        flag = "" if same else "  RESULTS DIFFER"
        print(f"{name:<28} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x{flag}")


if __name__ == "__main__":
    main()
