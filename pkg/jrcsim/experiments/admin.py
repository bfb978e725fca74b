from django.contrib import admin

from .models import ExperimentRun


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    """Журнал запусков экспериментов."""

    list_display = (
        'pk', 'kind', 'experiment', 'channel', 'seed', 'trials',
        'config_hash', 'checks_passed', 'created',
    )
    search_fields = ('experiment', 'config_hash')
    list_filter = ['kind', 'channel', 'created']
    readonly_fields = ('config', 'summary')
    empty_value_display = '-пусто-'
