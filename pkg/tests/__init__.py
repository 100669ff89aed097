# Pacote de testes para pytest

__all__ = []
