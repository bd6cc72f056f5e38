"""Hand-written equations of motion used as independent oracles."""
import numpy as np


def random_state(rng, d=3):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = a @ a.conj().T
    return m / np.trace(m)


def v_decay_rhs(rho, gamma, gamma12, delta):
    """Undriven V scheme, equal rates; basis (1, 2, 3), ground 2."""
    r = lambda i, j: rho[i - 1, j - 1]
    c = r(1, 3) + r(3, 1)
    return {
        (1, 1): -gamma * r(1, 1) - 0.5 * gamma12 * c,
        (3, 3): -gamma * r(3, 3) - 0.5 * gamma12 * c,
        (2, 2): gamma * (r(1, 1) + r(3, 3)) + gamma12 * c,
        (1, 3): -(gamma + 1j * delta) * r(1, 3) - 0.5 * gamma12 * (r(1, 1) + r(3, 3)),
        (3, 1): -(gamma - 1j * delta) * r(3, 1) - 0.5 * gamma12 * (r(1, 1) + r(3, 3)),
    }


def v_driven_rhs(rho, g1, g2, g12, o1, o2, delta, delta_l):
    """Both transitions driven, rotating frame of the laser."""
    r = lambda i, j: rho[i - 1, j - 1]
    d12 = (0.5j * o1 - (0.5 * g1 - 1j * (delta_l - 0.5 * delta)) * r(1, 2) - 0.5 * g12 * r(3, 2)
           - 0.5j * o2 * r(1, 3) - 0.5j * o1 * (2 * r(1, 1) + r(3, 3)))
    d32 = (0.5j * o2 - (0.5 * g2 - 1j * (delta_l + 0.5 * delta)) * r(3, 2) - 0.5 * g12 * r(1, 2)
           - 0.5j * o1 * r(3, 1) - 0.5j * o2 * (2 * r(3, 3) + r(1, 1)))
    d31 = (-(0.5 * (g1 + g2) - 1j * delta) * r(3, 1) - 0.5 * g12 * (r(3, 3) + r(1, 1))
           - 0.5j * o1 * r(3, 2) + 0.5j * o2 * r(2, 1))
    d11 = -g1 * r(1, 1) - 0.5 * g12 * (r(1, 3) + r(3, 1)) + 0.5j * o1 * (r(2, 1) - r(1, 2))
    d33 = -g2 * r(3, 3) - 0.5 * g12 * (r(1, 3) + r(3, 1)) + 0.5j * o2 * (r(2, 3) - r(3, 2))
    return {(1, 2): d12, (2, 1): np.conj(d12), (3, 2): d32, (2, 3): np.conj(d32),
            (3, 1): d31, (1, 3): np.conj(d31), (1, 1): d11, (3, 3): d33}


def rk4(f, y0, dt, steps):
    y = np.array(y0, dtype=complex)
    out = [y.copy()]
    for _ in range(steps):
        k1 = f(y)
        k2 = f(y + 0.5 * dt * k1)
        k3 = f(y + 0.5 * dt * k2)
        k4 = f(y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(y.copy())
    return np.array(out)


def v_decay_block_rhs(gamma, gamma12, delta):
    """Right-hand side on the (rho11, rho22, rho33, rho13, rho31) block."""
    def f(y):
        rho = np.zeros((3, 3), complex)
        rho[0, 0], rho[1, 1], rho[2, 2], rho[0, 2], rho[2, 0] = y
        d = v_decay_rhs(rho, gamma, gamma12, delta)
        return np.array([d[1, 1], d[2, 2], d[3, 3], d[1, 3], d[3, 1]])
    return f
