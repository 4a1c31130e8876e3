"""Double zeta values over F_q(theta): dimensions via Carlitz tensor powers."""
