"""
Pruebas de los filtros de detecciones y acciones
"""

import pytest

from src.core.actions import ActionKind
from src.filters import CompositeFilter, ConfidenceFilter, OpacityFilter, SpanFilter, apply_filter, frame_span

from .builders import action, interval, touch


class TestSimpleFilters:

    def test_confidence_threshold_is_inclusive(self):
        f = ConfidenceFilter(0.7)
        assert f.match(touch(0, 10, 10, confidence=0.7))
        assert not f.match(touch(0, 10, 10, confidence=0.69))
        assert f.get_description() == "Confianza >= 0.7"

    def test_opacity_fraction(self):
        low_only = action(ActionKind.TAP, [touch(f, 10, 10, high=False) for f in range(12)])
        mostly_high = action(ActionKind.TAP, [touch(f, 10, 10, high=f < 11) for f in range(12)])
        assert not OpacityFilter().match(low_only)
        assert OpacityFilter().match(mostly_high)

    def test_span(self):
        assert frame_span(interval(3, 5)) == 3
        assert SpanFilter(2).match(interval(3, 5))
        assert not SpanFilter(3).match(interval(3, 5))

    @pytest.mark.parametrize("build", [lambda: ConfidenceFilter(1.5), lambda: OpacityFilter(-0.1), lambda: SpanFilter(-1)])
    def test_invalid_parameters(self, build):
        with pytest.raises(ValueError):
            build()


class TestCompositeFilter:

    def test_and_or(self):
        short_high = interval(0, 1)
        long_high = interval(0, 9)
        filters = [OpacityFilter(0.5), SpanFilter(2)]

        assert apply_filter([short_high, long_high], CompositeFilter(filters, "AND")) == [long_high]
        assert apply_filter([short_high, long_high], CompositeFilter(filters, "or")) == [short_high, long_high]

    def test_empty_matches_everything(self):
        assert CompositeFilter().match(object())
        assert CompositeFilter().get_description() == "Sin filtros"

    def test_description(self):
        composite = CompositeFilter([SpanFilter(2)])
        assert composite.get_description() == "Duración > 2 frames"
        composite.add_filter(ConfidenceFilter(0.9))
        assert composite.get_description() == "(Duración > 2 frames AND Confianza >= 0.9)"

    def test_invalid_logic(self):
        with pytest.raises(ValueError):
            CompositeFilter(logic="XOR")
