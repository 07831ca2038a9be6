"""
Input Validation System
Validates command line values before any computation starts
"""
from typing import Any, Dict, List, Optional

from core.exceptions import ValidationError
from core.field import FieldSpec


class Validator:
    """Base validator class"""

    def __init__(self, required: bool = True, allow_none: bool = False):
        self.required = required
        self.allow_none = allow_none

    def validate(self, value: Any, field_name: str = "field") -> Any:
        """Main validation method"""
        if value is None:
            if self.allow_none:
                return None
            if self.required:
                raise ValidationError(f"{field_name} is required", field=field_name)
            return None

        return self._validate_value(value, field_name)

    def _validate_value(self, value: Any, field_name: str) -> Any:
        """Override in subclasses"""
        return value


class StringValidator(Validator):
    """Non-empty text, whitespace stripped"""

    def __init__(self, min_length: int = 1, max_length: int = 100000, **kwargs):
        super().__init__(**kwargs)
        self.min_length = min_length
        self.max_length = max_length

    def _validate_value(self, value: Any, field_name: str) -> str:
        value = str(value).strip()
        if len(value) < self.min_length:
            raise ValidationError(
                f"{field_name} must be at least {self.min_length} characters long",
                field=field_name,
                value=value
            )
        if len(value) > self.max_length:
            raise ValidationError(
                f"{field_name} must be at most {self.max_length} characters long",
                field=field_name,
                value=value
            )
        return value


class IntegerValidator(Validator):
    """Integer within an optional closed range"""

    def __init__(self,
                 min_value: Optional[int] = None,
                 max_value: Optional[int] = None,
                 **kwargs):
        super().__init__(**kwargs)
        self.min_value = min_value
        self.max_value = max_value

    def _check_range(self, number: int, field_name: str, raw: Any) -> int:
        if self.min_value is not None and number < self.min_value:
            raise ValidationError(f"{field_name} must be at least {self.min_value}", field=field_name, value=raw)
        if self.max_value is not None and number > self.max_value:
            raise ValidationError(f"{field_name} must be at most {self.max_value}", field=field_name, value=raw)
        return number

    def _parse(self, value: Any, field_name: str) -> int:
        if isinstance(value, bool):
            raise ValidationError(f"{field_name} must be an integer", field=field_name, value=value)
        if isinstance(value, int):
            return value
        try:
            return int(str(value).strip().replace('_', ''))
        except ValueError:
            raise ValidationError(f"{field_name} must be an integer", field=field_name, value=value)

    def _validate_value(self, value: Any, field_name: str) -> int:
        return self._check_range(self._parse(value, field_name), field_name, value)


class IntListValidator(IntegerValidator):
    """Comma separated integers, each within the range; order kept, duplicates dropped"""

    def _validate_value(self, value: Any, field_name: str) -> List[int]:
        items = value if isinstance(value, (list, tuple)) else str(value).split(',')
        result: List[int] = []
        for item in items:
            if isinstance(item, str) and not item.strip():
                raise ValidationError(f"{field_name} contains an empty entry", field=field_name, value=value)
            number = self._check_range(self._parse(item, field_name), field_name, item)
            if number not in result:
                result.append(number)
        if not result:
            raise ValidationError(f"{field_name} must list at least one value", field=field_name, value=value)
        return result


class ChoiceValidator(Validator):
    """Choice validation from a list of allowed values"""

    def __init__(self, choices: List[Any], case_sensitive: bool = True, **kwargs):
        super().__init__(**kwargs)
        self.choices = choices
        self.case_sensitive = case_sensitive
        if not case_sensitive:
            self.choices_lower = [str(choice).lower() for choice in choices]

    def _validate_value(self, value: Any, field_name: str) -> Any:
        if self.case_sensitive:
            if value not in self.choices:
                raise ValidationError(
                    f"{field_name} must be one of: {', '.join(map(str, self.choices))}",
                    field=field_name,
                    value=value
                )
            return value

        value_lower = str(value).strip().lower()
        if value_lower not in self.choices_lower:
            raise ValidationError(
                f"{field_name} must be one of: {', '.join(map(str, self.choices))}",
                field=field_name,
                value=value
            )
        return self.choices[self.choices_lower.index(value_lower)]


class ChoiceListValidator(ChoiceValidator):
    """Comma separated choices such as ``sliding,naive``"""

    def _validate_value(self, value: Any, field_name: str) -> List[Any]:
        items = value if isinstance(value, (list, tuple)) else str(value).split(',')
        result: List[Any] = []
        for item in items:
            choice = super()._validate_value(item.strip() if isinstance(item, str) else item, field_name)
            if choice not in result:
                result.append(choice)
        if not result:
            raise ValidationError(f"{field_name} must list at least one value", field=field_name, value=value)
        return result


class FieldSpecValidator(Validator):
    """Parses ``gf:<p>``, ``rational`` or ``approx:<tol>``; bad specs raise FieldSpecError (exit 2)"""

    def _validate_value(self, value: Any, field_name: str) -> FieldSpec:
        if isinstance(value, FieldSpec):
            return value
        return FieldSpec.parse(str(value))


class ValidationSchema:
    """Schema for validating complex data structures"""

    def __init__(self, fields: Dict[str, Validator]):
        self.fields = fields

    def validate(self, data: Dict[str, Any]) -> Dict[str, Any]:
        """Validate data against schema"""
        validated_data = {}
        errors = {}

        for field_name, validator in self.fields.items():
            try:
                validated_data[field_name] = validator.validate(data.get(field_name), field_name)
            except ValidationError as e:
                errors[field_name] = e.message

        for field in set(data.keys()) - set(self.fields.keys()):
            errors[field] = "Unexpected field"

        if errors:
            summary = "; ".join(f"{name}: {message}" for name, message in sorted(errors.items()))
            raise ValidationError(
                f"Validation failed: {summary}",
                context={'field_errors': errors}
            )

        return validated_data


ALGORITHMS = ['sliding', 'naive']
OUTPUT_FORMATS = ['bits', 'runs', 'json']

SEQ_SCHEMA = ValidationSchema({
    'stencil': StringValidator(),
    'field': FieldSpecValidator(),
    'n': IntegerValidator(min_value=1),
    'algo': ChoiceValidator(ALGORITHMS, case_sensitive=False),
    'format': ChoiceValidator(OUTPUT_FORMATS, case_sensitive=False),
})

VERIFY_SCHEMA = ValidationSchema({
    'stencil': StringValidator(required=False),
    'field': FieldSpecValidator(),
    'n': IntegerValidator(min_value=1),
    'random': IntegerValidator(min_value=1, required=False),
    'k': IntegerValidator(min_value=0, required=False),
    'seed': IntegerValidator(min_value=0, required=False),
    'inject_fault': IntegerValidator(min_value=1, required=False),
})

BENCH_SCHEMA = ValidationSchema({
    'k': IntListValidator(min_value=0),
    'n': IntListValidator(min_value=1),
    'field': FieldSpecValidator(),
    'algo': ChoiceListValidator(ALGORITHMS, case_sensitive=False),
    'seed': IntegerValidator(min_value=0, required=False),
    'workers': IntegerValidator(min_value=1, required=False),
})
