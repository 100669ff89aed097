# interfaces — Protocolo das fontes de concorrência (formas fechadas × medida numérica)
