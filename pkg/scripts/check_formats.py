"""Compare graded-format Hilbert series with orbifold RR for the catalogued formats."""
from qfano.catalogue import known_formats
from qfano.orbifold_rr import NumericalFano, hilbert_coeffs
from qfano.wps import (format_fano_invariants, format_series, gorenstein_symmetry_check,
                       poly_str, series_coeffs)

N = 40
for f, basket in known_formats():
    s = format_series(f)
    q, A3 = format_fano_invariants(f)
    rr = hilbert_coeffs(NumericalFano(q, A3, basket), N)
    ok = series_coeffs(s, N) == rr and gorenstein_symmetry_check(s, f.k_adj, f.codim)
    print(f"{'ok ' if ok else 'BAD'} {str(f):45} q={q:<3} A3={str(A3):8} {basket.serialize() or '{}'}")
    print(f"    {poly_str(s.numerator)}")
