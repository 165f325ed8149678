"""Independent oracle values for the characteristic function tests.

P(z) = tau*z**2 + z**alpha - hprime on the principal branch.
Real root by bisection; complex pair by 2-D Newton (mpmath.findroot on the
real/imaginary split). Prints the values frozen in tests/test_charroots.cpp.
"""
import mpmath as mp

mp.mp.dps = 40


def P(z, tau, alpha, hp):
    return tau * z**2 + mp.power(z, alpha) - hp


def bisect_lambda(tau, alpha, hp):
    lo, hi = mp.mpf(0), mp.mpf(1)
    while P(hi, tau, alpha, hp) <= 0:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if P(mid, tau, alpha, hp) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def pair(tau, alpha, hp, guess):
    def f(x, y):
        v = P(mp.mpc(x, y), tau, alpha, hp)
        return [v.real, v.imag]
    x, y = mp.findroot(f, (guess.real, guess.imag))
    return mp.mpc(x, y)


for (tau, alpha, hp) in [(1, 0.5, 1), (1, 0.25, 1), (1, 0.75, 1), (2, 0.5, 3)]:
    lam = bisect_lambda(tau, mp.mpf(alpha), hp)
    z = pair(tau, mp.mpf(alpha), hp, mp.mpc(-1.0, 1.0))
    print(f"tau={tau} alpha={alpha} hp={hp} lambda={mp.nstr(lam, 17)} "
          f"pair={mp.nstr(z.real, 17)} +/- {mp.nstr(z.imag, 17)}i")

z = pair(1, mp.mpf('0.999'), 1, mp.mpc(-1.6, 0.01))
print("alpha=0.999 pair", mp.nstr(z, 17), "lambda", mp.nstr(bisect_lambda(1, mp.mpf('0.999'), 1), 17))
