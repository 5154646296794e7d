"""Physical constants (CODATA 2018, SI), fixed for reproducible reports."""

#: speed of light in vacuum, m/s (exact)
c = 299792458.0
#: reduced Planck constant, J s (exact since 2019 SI: h / 2 pi)
hbar = 1.054571817e-34
#: elementary charge, C (exact)
e = 1.602176634e-19
#: electron mass, kg
m_e = 9.1093837015e-31

TABLE = {
    "c": c,
    "hbar": hbar,
    "e": e,
    "m_e": m_e,
    "source": "CODATA 2018",
}
