# src/exceptions.py
"""
Исключения решателя компонентной раскраски.

"Нет решения" у разрешающих процедур (comb_part, split_part, перебор CP/SP)
возвращается значением None, а не исключением.
"""


class ComponentColoringError(Exception):
    """Базовое исключение всех модулей пакета."""


class InstanceParseError(ComponentColoringError):
    """Ошибка разбора входного файла (экземпляр, запросы, CNF, решение)."""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        prefix = f"строка {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


class NotProperError(ComponentColoringError):
    """Один интервал собственно содержит другой."""

    def __init__(self, outer_id, inner_id):
        self.outer_id = outer_id
        self.inner_id = inner_id
        super().__init__(
            f"граф не является собственным интервальным: интервал '{outer_id}' содержит '{inner_id}'"
        )


class WeightTooLargeError(ComponentColoringError):
    def __init__(self, item_id, weight, capacity):
        self.item_id = item_id
        self.weight = weight
        self.capacity = capacity
        super().__init__(f"вес вершины '{item_id}' равен {weight} и превышает ёмкость C={capacity}")


class InfeasibleInputError(ComponentColoringError):
    """Дробное решение нарушает ограничения модели."""

    def __init__(self, violations):
        self.violations = list(violations)
        shown = "; ".join(str(v) for v in self.violations[:5])
        more = f" (и ещё {len(self.violations) - 5})" if len(self.violations) > 5 else ""
        super().__init__(f"решение недопустимо: {shown}{more}")


class SizeGuardError(ComponentColoringError):
    def __init__(self, size, guard, what="экземпляр"):
        self.size = size
        self.guard = guard
        super().__init__(f"{what} слишком велик для полного перебора: {size} > {guard}")


class CertificateError(ComponentColoringError):
    """Сертификат не проходит проверку исходной задачи."""


class TriviallyUnsatisfiableError(ComponentColoringError):
    """CNF содержит пустую дизъюнкцию, сведение не строится."""


class PostconditionError(ComponentColoringError):
    """Результат алгоритма не прошёл собственную проверку."""


class ConfigError(ComponentColoringError):
    """Некорректный config.yaml или недопустимые параметры запуска."""
