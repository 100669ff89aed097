# cli — Comandos de linha: simulate, verify, sweep, figures
