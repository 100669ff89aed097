# dynamics — Evoluções analíticas dos cenários, modelos de banho e oráculo numérico
