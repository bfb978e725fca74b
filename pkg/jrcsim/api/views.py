from django_filters.rest_framework import DjangoFilterBackend
from rest_framework.pagination import LimitOffsetPagination
from rest_framework.permissions import AllowAny
from rest_framework.viewsets import ReadOnlyModelViewSet

from api.serializers import (
    ExperimentRunListSerializer, ExperimentRunSerializer,
)
from experiments.models import ExperimentRun


class ExperimentRunViewSet(ReadOnlyModelViewSet):
    queryset = ExperimentRun.objects.all()
    pagination_class = LimitOffsetPagination
    permission_classes = (AllowAny,)
    filter_backends = (DjangoFilterBackend,)
    filterset_fields = ('kind', 'experiment', 'channel', 'config_hash')

    def get_serializer_class(self):
        if self.action == 'list':
            return ExperimentRunListSerializer
        return ExperimentRunSerializer
