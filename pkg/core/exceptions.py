# core/exceptions.py
"""
Exceções partilhadas pelos módulos numéricos

Autor: Sistema Rede SU(3)
Data: 2025
"""


class ToleranceError(ArithmeticError):
    """
    Falha de tolerância numérica

    Guarda o desvio medido e a tolerância exigida para que a linha de
    comando possa sair com o código 3.
    """

    def __init__(self, message, deviation=None, tolerance=None):
        super().__init__(message)
        self.deviation = deviation
        self.tolerance = tolerance

    def __str__(self):
        base = super().__str__()
        if self.deviation is None:
            return base
        return f'{base} (desvio {self.deviation:.3e}, tolerância {self.tolerance:.1e})'


def check_tolerance(deviation, tolerance, what):
    """
    Levanta ToleranceError se o desvio exceder a tolerância

    Args:
        deviation (float): desvio medido
        tolerance (float): tolerância aceite
        what (str): descrição da verificação

    Raises:
        ToleranceError: se deviation > tolerance
    """
    if not deviation <= tolerance:
        raise ToleranceError(f'Tolerância excedida em {what}', deviation, tolerance)
    return deviation
