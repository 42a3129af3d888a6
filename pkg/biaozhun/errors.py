"""
异常层级

CLI 按异常类型决定退出码：
    ValidationError        -> 1
    InternalInvariantError -> 2
    ParseError             -> 3
"""


class BiaozhunError(Exception):
    """所有本包异常的基类"""


class ValidationError(BiaozhunError, ValueError):
    """输入不满足不变量（维数/截断不一致、实性、Levi 形式、非法选择等）"""


class ParseError(ValidationError):
    """文档语法错误，``where`` 记录出错位置（JSON 路径、列号）"""

    def __init__(self, message: str, where: str = ""):
        self.message = message
        self.where = where
        super().__init__(f"{message} (位置: {where})" if where else message)


class InternalInvariantError(BiaozhunError, RuntimeError):
    """按理论不可能发生的情况：奇异线方程、对照解不一致、证书非空"""


class NonUniqueSolutionError(InternalInvariantError):
    """精确线性系统奇异或不相容"""


class DegenerateRecursionError(BiaozhunError, ArithmeticError):
    """迹分解递推遇到 c_k = 0"""
