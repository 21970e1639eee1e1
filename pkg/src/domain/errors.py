"""ドメイン例外"""
from typing import List, Optional


class TamearithError(Exception):
    """全てのドメイン例外の基底クラス"""


class DescriptorError(TamearithError, ValueError):
    """記述子の検証エラー（項目別の診断を保持）"""

    def __init__(self, source: str, problems: List[str]):
        self.source = source
        self.problems = list(problems)
        detail = "; ".join(self.problems)
        super().__init__(f"{source}: {detail}")


class SuppliedTableInvalid(TamearithError, ValueError):
    pass


class ComputationOverflow(TamearithError, ValueError):
    pass


class NotIrreducible(TamearithError, ValueError):
    pass


class NotASubgroup(TamearithError, ValueError):
    pass


class DivisionByZero(TamearithError, ZeroDivisionError):
    pass


class NotCoprime(TamearithError, ValueError):
    pass


class NotReal(TamearithError, ValueError):
    pass


class PrecisionInsufficient(TamearithError, ArithmeticError):
    """区間が符号を決定できない"""

    def __init__(self, message: str, suggested_bits: Optional[int] = None):
        self.suggested_bits = suggested_bits
        if suggested_bits is not None:
            message = f"{message} (--precision-bits {suggested_bits} を試してください)"
        super().__init__(message)


class Singular(TamearithError, ArithmeticError):
    pass


class GroupMismatch(TamearithError, ValueError):
    pass


class NotVisiblyRational(TamearithError, ValueError):
    pass


class OddPairing(TamearithError, ValueError):
    pass


class OddProduct(TamearithError, ValueError):
    pass


class NotRationalSquare(TamearithError, ValueError):
    pass


class NotABasis(TamearithError, ValueError):
    pass


class RankDeficiency(TamearithError, ArithmeticError):
    pass


class NotQuasiIso(TamearithError, ValueError):
    pass


class NotFree(TamearithError, ValueError):
    pass


class NotSymplectic(TamearithError, ValueError):
    pass


class NonIntegralExponent(TamearithError, ValueError):
    pass


class BadOrder(TamearithError, ValueError):
    pass


class NotCohomologicallyTrivial(TamearithError, ValueError):
    pass


class TamenessViolation(TamearithError, ValueError):
    pass
