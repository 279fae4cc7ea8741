"""Reference error tables: absolute errors and convergence orders.

Each table maps ``alpha`` to a list of ``(M, E, ECO)`` with ``h = 1/M`` and
``ECO`` ``None`` on the coarsest row. For the telegraph table ``tau = h``.
"""

from __future__ import annotations

Row = tuple[int, float, float | None]

SCHEME4_REF: dict[float, list[Row]] = {
    1.1: [(20, 1.985528e-6, None), (40, 1.247417e-7, 3.9925), (80, 7.806460e-9, 3.9981), (160, 4.880592e-10, 3.9995), (320, 3.050456e-11, 4.0000)],
    1.3: [(20, 3.418165e-6, None), (40, 2.147477e-7, 3.9925), (80, 1.343913e-8, 3.9981), (160, 8.402173e-10, 3.9995), (320, 5.251979e-11, 3.9998)],
    1.5: [(20, 5.712995e-6, None), (40, 3.588944e-7, 3.9926), (80, 2.245955e-8, 3.9982), (160, 1.404168e-9, 3.9995), (320, 8.777425e-11, 3.9998)],
    1.7: [(20, 9.316621e-6, None), (40, 5.851888e-7, 3.9928), (80, 3.661963e-8, 3.9982), (160, 2.289431e-9, 3.9996), (320, 1.431370e-10, 3.9995)],
    1.9: [(20, 1.486627e-5, None), (40, 9.335587e-7, 3.9932), (80, 5.841643e-8, 3.9983), (160, 3.652104e-9, 3.9996), (320, 2.284402e-10, 3.9988)],
}

SCHEME6_REF: dict[float, list[Row]] = {
    1.1: [(20, 3.120201e-8, None), (24, 1.057512e-8, 5.9345), (28, 4.223802e-9, 5.9537), (32, 1.904343e-9, 5.9656), (36, 9.422903e-10, 5.9735)],
    1.3: [(20, 6.008620e-8, None), (24, 2.036744e-8, 5.9337), (28, 8.135715e-9, 5.9531), (32, 3.668326e-9, 5.9651), (36, 1.815230e-9, 5.9730)],
    1.5: [(20, 1.123916e-7, None), (24, 3.810009e-8, 5.9333), (28, 1.521978e-8, 5.9528), (32, 6.862760e-9, 5.9648), (36, 3.396074e-9, 5.9728)],
    1.7: [(20, 2.053203e-7, None), (24, 6.960225e-8, 5.9333), (28, 2.780411e-8, 5.9527), (32, 1.253731e-8, 5.9647), (36, 6.204232e-9, 5.9727)],
    1.9: [(20, 3.675466e-7, None), (24, 1.245861e-7, 5.9338), (28, 4.976658e-8, 5.9530), (32, 2.244006e-8, 5.9649), (36, 1.110461e-8, 5.9727)],
}

SCHEME8_REF: dict[float, list[Row]] = {
    1.1: [(30, 3.442344e-11, None), (34, 1.279869e-11, 7.9048), (38, 5.303531e-12, 7.9206), (42, 2.397829e-12, 7.9315), (46, 1.164521e-12, 7.9393)],
    1.3: [(30, 7.195825e-11, None), (34, 2.675551e-11, 7.9044), (38, 1.108608e-11, 7.9213), (42, 5.011612e-12, 7.9327), (46, 2.433728e-12, 7.9402)],
    1.5: [(30, 1.459781e-10, None), (34, 5.427806e-11, 7.9044), (38, 2.248828e-11, 7.9220), (42, 1.016534e-11, 7.9335), (46, 4.936491e-12, 7.9401)],
    1.7: [(30, 2.889640e-10, None), (34, 1.074284e-10, 7.9055), (38, 4.449502e-11, 7.9249), (42, 2.010185e-11, 7.9390), (46, 9.752953e-12, 7.9502)],
    1.9: [(30, 5.601931e-10, None), (34, 2.082444e-10, 7.9062), (38, 8.624075e-11, 7.9260), (42, 3.895758e-11, 7.9401), (46, 1.890060e-11, 7.9506)],
}

SCHEME10_REF: dict[float, list[Row]] = {
    1.1: [(30, 2.669378e-12, None), (34, 6.799466e-13, 9.5568), (38, 2.057061e-13, 9.5521), (42, 7.247668e-14, 9.3790), (46, 2.983513e-14, 8.8684)],
    1.3: [(30, 6.076893e-12, None), (34, 1.530707e-12, 9.6349), (38, 4.563785e-13, 9.6687), (42, 1.566398e-13, 9.6145), (46, 6.127250e-14, 9.3784)],
    1.5: [(30, 1.316180e-11, None), (34, 3.294738e-12, 9.6784), (38, 9.747428e-13, 9.7306), (42, 3.301910e-13, 9.7325), (46, 1.257671e-13, 9.6443)],
    1.7: [(30, 2.756366e-11, None), (34, 6.859984e-12, 9.7190), (38, 2.007171e-12, 9.8190), (42, 6.624227e-13, 9.9669), (46, 2.368039e-13, 10.2781)],
    1.9: [(30, 5.640743e-11, None), (34, 1.401455e-11, 9.7309), (38, 4.097488e-12, 9.8250), (42, 1.354007e-12, 9.9555), (46, 4.868649e-13, 10.2198)],
}

ROUGH_REF: dict[float, list[Row]] = {
    1.1: [(10, 5.900848e-4, None), (20, 1.470732e-4, 2.0044), (40, 3.674047e-5, 2.0011), (80, 9.183380e-6, 2.0003), (160, 2.295736e-6, 2.0001)],
    1.3: [(10, 6.828118e-4, None), (20, 1.699820e-4, 2.0061), (40, 4.245071e-5, 2.0015), (80, 1.060988e-5, 2.0004), (160, 2.652296e-6, 2.0001)],
    1.5: [(10, 7.105214e-4, None), (20, 1.766378e-4, 2.0081), (40, 4.409782e-5, 2.0020), (80, 1.102061e-5, 2.0005), (160, 2.754912e-6, 2.0001)],
    1.7: [(10, 6.101600e-4, None), (20, 1.514533e-4, 2.0103), (40, 3.779590e-5, 2.0026), (80, 9.444768e-6, 2.0006), (160, 2.360928e-6, 2.0002)],
    1.9: [(10, 2.863584e-4, None), (20, 7.095794e-5, 2.0128), (40, 1.770032e-5, 2.0032), (80, 4.422636e-6, 2.0008), (160, 1.105502e-6, 2.0002)],
}

TELEGRAPH_REF: dict[float, list[Row]] = {
    1.2: [(4, 6.629148e-5, None), (8, 3.374742e-6, 4.2960), (16, 1.987545e-7, 4.0857), (32, 1.216316e-8, 4.0304), (64, 7.535224e-10, 4.0127), (128, 4.689844e-11, 4.0060)],
    1.4: [(4, 7.814928e-5, None), (8, 3.293314e-6, 4.5686), (16, 1.906135e-7, 4.1108), (32, 1.160778e-8, 4.0375), (64, 7.178332e-10, 4.0153), (128, 4.465339e-11, 4.0068)],
    1.6: [(4, 9.026191e-5, None), (8, 3.701763e-6, 4.6078), (16, 2.350544e-7, 3.9771), (32, 1.451435e-8, 4.0174), (64, 9.043217e-10, 4.0045), (128, 5.651652e-11, 4.0001)],
    1.8: [(4, 1.027098e-4, None), (8, 4.552933e-6, 4.4956), (16, 2.329253e-7, 4.2889), (32, 1.358572e-8, 4.0997), (64, 8.403641e-10, 4.0149), (128, 5.231801e-11, 4.0056)],
}

# scheme order -> (table, bump exponent m of x^m (1-x)^m)
RIESZ_REFS: dict[int, tuple[dict[float, list[Row]], int]] = {
    4: (SCHEME4_REF, 4),
    6: (SCHEME6_REF, 6),
    8: (SCHEME8_REF, 8),
    10: (SCHEME10_REF, 10),
}


def grid_of(table: dict[float, list[Row]]) -> tuple[list[float], list[int]]:
    """``(alphas, Ms)`` of a table; every alpha block shares one M list."""
    alphas = sorted(table)
    return alphas, [r[0] for r in table[alphas[0]]]
