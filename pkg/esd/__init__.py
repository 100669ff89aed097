# esd — Detecção de morte súbita do emaranhamento (ESD) e varreduras em (α, β)
