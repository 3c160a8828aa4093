"""
Printed E_q(2) formulas kept as annotated reference data.

None of these are checked: the symbolic Hopf algebra they live in is not
modelled. The CLI surfaces them next to the numeric residuals.
"""
from typing import Any, Dict

# v = e^{−π}, n = π_−, n̄ = e^{π}π_+
SHORTHAND = {
    'v': 'exp(-pi)',
    'n': 'pi-',
    'nbar': 'exp(pi) pi+',
}

# Lower triangular; row i lists f_i1..f_i4.
F_MATRIX = (
    ('exp(zJ)', '0', '0', '0'),
    ('kappa exp(z/2) b+', '1', '0', '0'),
    ('-kappa exp(-z/2) b- exp(zJ)', '0', '1', '0'),
    ('-kappa^2 b- b+', '-kappa exp(-z/2) b-', 'kappa exp(z/2) exp(-zJ) b+', 'exp(-zJ)'),
)

R_MATRIX = (
    ('1', '0', '0', '0'),
    ('-exp(z/4) nbar', 'vbar', '0', '0'),
    ('-exp(z/4) n', '0', 'v', '0'),
    ('exp(z/2) n nbar', '-exp(z/4) n vbar', '-exp(z/4) v nbar', '1'),
)

# Coproduct and antipode of the dual pair, written for the opposite coproduct.
COPRODUCT = {
    'b+': 'b+ (x) 1 + exp(zJ) (x) b+',
    'b-': 'b- (x) exp(-zJ) + 1 (x) b-',
    'J': 'J (x) 1 + 1 (x) J',
    'pi+': 'pi+ (x) exp(-pi) + 1 (x) pi+',
    'pi-': 'pi- (x) 1 + exp(-pi) (x) pi-',
    'pi': 'pi (x) 1 + 1 (x) pi',
}

ANTIPODE = {
    'b+': '-exp(-zJ) b+',
    'b-': '-b- exp(zJ)',
    'J': '-J',
    'pi+': '-pi+ exp(pi)',
    'pi-': '-exp(pi) pi-',
    'pi': '-pi',
}

PAIRING = {
    ('J', 'pi'): '1',
    ('b+', 'pi+'): '1',
    ('b-', 'pi-'): '1',
}

ANNOTATIONS = (
    'The calculus defined by chi1..chi4 is generated by the coboundary -kappa^{-1} (delta omega_4).',
    'f and R are the matrices of the representation on the generators of the calculus; '
    'they are stored for reference and not checked as corepresentations.',
)


def reference_data() -> Dict[str, Any]:
    """JSON-ready copy of every table above."""
    return {
        'shorthand': dict(SHORTHAND),
        'f': [list(row) for row in F_MATRIX],
        'R': [list(row) for row in R_MATRIX],
        'coproduct': dict(COPRODUCT),
        'antipode': dict(ANTIPODE),
        'pairing': [{'X': x, 'a': a, 'value': v} for (x, a), v in PAIRING.items()],
        'annotations': list(ANNOTATIONS),
    }
