"""Width of the naive left-to-right construction versus the factorization-based
one on the two-path family, for growing n."""
import sys

from spandecomp import decompose_with_certificate, gen_fig1, naive_sequential, validate_suitable


def main(sizes):
    print(f"{'n':>4} {'naive':>6} {'structured':>11} {'h':>4} {'|S|':>6} {'3kh-1':>6}")
    for n in sizes:
        g, p = gen_fig1(n)
        naive = naive_sequential(g, p)
        cert = decompose_with_certificate(g, p)
        assert validate_suitable(g, naive).ok and validate_suitable(g, cert.decomposition).ok
        print(f"{n:>4} {naive.width:>6} {cert.decomposition.width:>11} {cert.height:>4} "
              f"{cert.semigroup_size:>6} {cert.bound:>6}")


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [2, 4, 8, 16])
