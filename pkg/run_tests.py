import subprocess
import sys


def run_all():
    # Testes unitários
    rc = subprocess.call([sys.executable, "-m", "pytest", "tests/", "-q"])
    if rc != 0:
        print("pytest retornou falha. Interrompendo execução de demais passos.")
        return rc

    # Suítes de verificação completas
    rc = subprocess.call([sys.executable, "main.py", "verify"])
    if rc != 0:
        print(f"main.py verify retornou {rc}. Interrompendo execução de demais passos.")
        return rc

    # Curvas de referência
    return subprocess.call([sys.executable, "main.py", "figures", "--out", "figuras"])


if __name__ == "__main__":
    sys.exit(run_all())
