# measures — Quantificadores de emaranhamento (concorrência, tangle residual, convex roof)
