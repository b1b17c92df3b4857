"""Independent sl(n) model of the brackets using sympy matrix-valued fields.

Shares no code with the package: sections are n x n traceless sympy matrices
of polynomials, the Killing form is the shortcut ``2n tr(XY)``, the g_0 lift
of the Christoffel symbols is written out by hand and curvature comes from
``d omega + [omega, omega]``.
"""
import sympy as sp


class MatrixModel:
    def __init__(self, n, christoffel=None, rho=None):
        # christoffel: {(a, b, c): sympy expr} for Gamma^a_{bc}; rho: {(a, b): expr}
        self.n = n
        self.m = n - 1
        self.xs = sp.symbols(f"x1:{self.m + 1}")
        gam = christoffel or {}
        rho = rho or {}
        self.omega = []
        for a in range(self.m):
            w = self.E(a + 1, 0)
            # Gamma_a acts on g_-1 = first column as the matrix M[b][c] = Gamma^b_{ac}
            mat = sp.zeros(self.m, self.m)
            for b in range(self.m):
                for c in range(self.m):
                    mat[b, c] = sp.sympify(gam.get((b, a, c), 0))
            tr = mat.trace()
            lower = mat - tr / n * sp.eye(self.m)
            g0 = sp.zeros(n, n)
            g0[0, 0] = -lower.trace()
            g0[1:, 1:] = lower
            w = w + g0
            for b in range(self.m):
                w = w + sp.sympify(rho.get((a, b), 0)) * self.eps(b)
            self.omega.append(w)
        self.kappa = {}
        for a in range(self.m):
            for b in range(self.m):
                self.kappa[a, b] = sp.expand(self.d(self.omega[b], a) - self.d(self.omega[a], b)
                                             + self.comm(self.omega[a], self.omega[b]))

    def E(self, i, j):
        e = sp.zeros(self.n, self.n)
        e[i, j] = 1
        return e

    def eps(self, a):
        return self.E(0, a + 1) / (2 * self.n)

    def comm(self, x, y):
        return x * y - y * x

    def B(self, x, y):
        return sp.expand(2 * self.n * (x * y).trace())

    def d(self, x, a):
        return x.applyfunc(lambda e: sp.diff(e, self.xs[a]))

    def pi(self, x):
        return [x[a + 1, 0] for a in range(self.m)]

    def iota(self, form):
        out = sp.zeros(self.n, self.n)
        for a, v in enumerate(form):
            out = out + v * self.eps(a)
        return out

    def nabla(self, x, a):
        return self.d(x, a) + self.comm(self.omega[a], x)

    def along(self, v, x):
        out = sp.zeros(self.n, self.n)
        for a in range(self.m):
            out = out + v[a] * self.nabla(x, a)
        return out

    def kap(self, u, v):
        out = sp.zeros(self.n, self.n)
        for a in range(self.m):
            for b in range(self.m):
                out = out + u[a] * v[b] * self.kappa[a, b]
        return out

    def angle(self, x, y):
        return self.along(self.pi(x), y) - self.along(self.pi(y), x) - self.comm(x, y) - self.kap(self.pi(x), self.pi(y))

    def bracket(self, x, y):
        px, py = self.pi(x), self.pi(y)
        unit = [[int(a == b) for b in range(self.m)] for a in range(self.m)]
        form = [self.B(y, self.kap(px, unit[c])) - self.B(x, self.kap(py, unit[c]))
                + self.B(self.nabla(x, c), y) for c in range(self.m)]
        return (self.angle(x, y) + self.iota(form)).applyfunc(sp.expand)

    def jacobiator(self, x, y, z):
        br = self.bracket
        return (br(x, br(y, z)) - br(br(x, y), z) - br(y, br(x, z))).applyfunc(sp.expand)

    def at(self, x, point):
        return x.subs(dict(zip(self.xs, point)))
