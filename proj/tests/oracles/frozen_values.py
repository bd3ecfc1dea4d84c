# Independent high-precision reference values frozen into the C++ tests.
# Uses mpmath quadrature of the defining expectation integral, never the closed form.
import mpmath as mp

mp.mp.dps = 30


def vmf_expectation(kappa, mu_phi, mu_psi, d, wavelength=1.0):
    k = 2 * mp.pi / wavelength
    norm = kappa / (4 * mp.pi * mp.sinh(kappa)) if kappa else 1 / (4 * mp.pi)

    def integrand(phi, psi):
        dot_mu = mp.cos(mu_psi) * mp.cos(psi) * mp.cos(phi - mu_phi) + mp.sin(mu_psi) * mp.sin(psi)
        kx = mp.cos(phi) * mp.cos(psi)
        ky = mp.sin(phi) * mp.cos(psi)
        kz = mp.sin(psi)
        phase = k * (kx * d[0] + ky * d[1] + kz * d[2])
        return norm * mp.exp(kappa * dot_mu) * mp.cos(psi) * mp.expj(phase)

    return mp.quad(integrand, [-mp.pi, 0, mp.pi], [-mp.pi / 2, 0, mp.pi / 2])


if __name__ == "__main__":
    print("scf kappa=10 d=(1,0,0):", vmf_expectation(10, 0, 0, (1, 0, 0)))
    c = mp.cos(mp.pi / 4)
    print("scf kappa=10 beta=45 |d|=1:", vmf_expectation(10, 0, 0, (c, c, 0)))
    print("pdf kappa=2 at mean, mu_psi=0.3:", 2 / (4 * mp.pi * mp.sinh(2)) * mp.e**2 * mp.cos(0.3))
    print("sinh(2)/2:", mp.sinh(2) / 2)
    print("sinc(x)=0.5 root:", mp.findroot(lambda x: mp.sin(x) / x - 0.5, 1.9))
    for deg in (2, 1, 0.5):
        print("kappa(width=%s deg):" % deg, 2 / (1 - mp.cos(mp.radians(deg) / 2)))
    print("coth(10)-1/10:", mp.coth(10) - mp.mpf(1) / 10)
