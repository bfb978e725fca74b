from rest_framework.serializers import ModelSerializer

from experiments.models import ExperimentRun


class ExperimentRunSerializer(ModelSerializer):

    class Meta:
        model = ExperimentRun
        fields = '__all__'


class ExperimentRunListSerializer(ModelSerializer):
    """Без конфигурации и итогов: они бывают большими."""

    class Meta:
        model = ExperimentRun
        exclude = ('config', 'summary')
