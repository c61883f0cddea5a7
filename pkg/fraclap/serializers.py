from rest_framework import serializers

from gfun import GSpec, HypSpec, validate
from params import Param


class ParamField(serializers.Field):
    """A parameter as its rational text, e.g. "3/2"; numbers are accepted on input."""

    def to_representation(self, value):
        return str(value)

    def to_internal_value(self, data):
        if isinstance(data, bool):
            raise serializers.ValidationError("booleans are not parameters")
        try:
            return Param.of(data)
        except (TypeError, ValueError) as exc:
            raise serializers.ValidationError(str(exc))


class ComplexField(serializers.Field):
    """A complex number as [re, im]; a bare number is read as real."""

    def to_representation(self, value):
        value = complex(value)
        return [value.real, value.imag]

    def to_internal_value(self, data):
        if isinstance(data, (int, float)) and not isinstance(data, bool):
            return complex(data)
        if isinstance(data, (list, tuple)) and len(data) == 2:
            try:
                return complex(float(data[0]), float(data[1]))
            except (TypeError, ValueError):
                pass
        raise serializers.ValidationError("expected a number or [re, im]")


class GSpecSerializer(serializers.Serializer):
    m = serializers.IntegerField(min_value=0)
    n = serializers.IntegerField(min_value=0)
    p = serializers.IntegerField(read_only=True)
    q = serializers.IntegerField(read_only=True)
    a = serializers.ListField(child=ParamField(), allow_empty=True)
    b = serializers.ListField(child=ParamField(), allow_empty=True)
    coeff = ComplexField(required=False, default=1.0)

    def validate(self, data):
        if data["m"] > len(data["b"]) or data["n"] > len(data["a"]):
            raise serializers.ValidationError(
                f"m={data['m']}, n={data['n']} exceed the row lengths ({len(data['b'])}, {len(data['a'])})"
            )
        result = validate(GSpec.make(data["m"], data["n"], data["a"], data["b"], data["coeff"]))
        if not result:
            raise serializers.ValidationError(result.violations)
        return data

    def create(self, validated_data):
        return GSpec.make(
            validated_data["m"],
            validated_data["n"],
            validated_data["a"],
            validated_data["b"],
            validated_data["coeff"],
        )


class HypSpecSerializer(serializers.Serializer):
    upper = serializers.ListField(child=ParamField(), allow_empty=True)
    lower = serializers.ListField(child=ParamField(), allow_empty=True)
    regularized = serializers.BooleanField(default=True)
    coeff = ComplexField(required=False, default=1.0)
    sign = serializers.ChoiceField(choices=[1, -1], default=-1)
    scale = serializers.FloatField(write_only=True, required=False, default=1.0, min_value=0.0)

    def create(self, validated_data):
        return HypSpec(
            tuple(validated_data["upper"]),
            tuple(validated_data["lower"]),
            validated_data["regularized"],
            validated_data["coeff"],
            validated_data["sign"],
        )


class EvalResultSerializer(serializers.Serializer):
    value = ComplexField()
    err = serializers.FloatField(source="est_abs_error")
    route = serializers.CharField()
    flags = serializers.ListField(child=serializers.CharField())


class ValiditySerializer(serializers.Serializer):
    origin = serializers.BooleanField()
    sphere = serializers.BooleanField()
    region = serializers.CharField()
    description = serializers.CharField(source="describe")


class TransformResultSerializer(serializers.Serializer):
    operator = serializers.CharField()
    d = serializers.IntegerField(source="input.d")
    l = serializers.IntegerField(source="input.l")
    alpha = ParamField()
    condition = serializers.CharField()
    input = GSpecSerializer(source="input.profile")
    unreduced = GSpecSerializer(allow_null=True)
    output = GSpecSerializer(source="output.profile")
    validity = ValiditySerializer()
    closed_form = serializers.SerializerMethodField()
    notes = serializers.ListField(child=serializers.CharField())

    def get_closed_form(self, obj):
        return [
            {"power": str(power), "hyp": HypSpecSerializer(hyp).data}
            for power, hyp in obj.closed_form
        ]


class HypTransformResultSerializer(serializers.Serializer):
    operator = serializers.SerializerMethodField()
    d = serializers.IntegerField()
    l = serializers.IntegerField()
    alpha = ParamField()
    scale = serializers.FloatField()
    input = HypSpecSerializer()
    output = HypSpecSerializer()
    validity = ValiditySerializer()

    def get_operator(self, obj):
        return "hyp"


class SpectralExpansionSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    alpha = serializers.FloatField()
    truncation = serializers.ListField(child=serializers.IntegerField())
    terms = serializers.SerializerMethodField()

    def get_terms(self, obj):
        # rows of l, m, n, coeff, lambda in index order
        return obj.to_dict()["terms"]
