"""
Admin configuration for the lab app.
"""

from django.contrib import admin
from django.utils.html import format_html
from django.utils.translation import gettext_lazy as _
from .models import ExperimentRun


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    """
    Custom admin for ExperimentRun model.
    """
    list_display = [
        'short_id', 'kind', 'status_display', 'row_count',
        'duration_display', 'created_by', 'is_active', 'created_at'
    ]
    list_filter = ['kind', 'status', 'is_active', 'created_at']
    search_fields = ['kind', 'error_message', 'created_by']
    ordering = ['-created_at']
    readonly_fields = [
        'id', 'kind', 'parameters', 'summary', 'results', 'row_count',
        'started_at', 'finished_at', 'error_message',
        'created_at', 'updated_at', 'created_by', 'updated_by'
    ]

    fieldsets = (
        (_('Run'), {
            'fields': ('kind', 'status', 'parameters', 'summary')
        }),
        (_('Timing'), {
            'fields': ('started_at', 'finished_at', 'error_message')
        }),
        (_('Rows'), {
            'fields': ('row_count', 'results'),
            'classes': ('collapse',)
        }),
        (_('System Fields'), {
            'fields': ('is_active', 'created_at', 'updated_at', 'created_by', 'updated_by'),
            'classes': ('collapse',)
        }),
    )

    def short_id(self, obj):
        return str(obj.id)[:8]
    short_id.short_description = 'Run'

    def status_display(self, obj):
        """Display status with color coding."""
        status_colors = {
            'pending': 'orange',
            'running': 'blue',
            'completed': 'green',
            'failed': 'red',
        }

        color = status_colors.get(obj.status, 'black')
        return format_html(
            '<span style="color: {}; font-weight: bold;">{}</span>',
            color,
            obj.get_status_display()
        )
    status_display.short_description = 'Status'

    def duration_display(self, obj):
        seconds = obj.duration_seconds
        if seconds is None:
            return '-'
        return f'{seconds:.2f} s'
    duration_display.short_description = 'Duration'

    actions = ['mark_failed', 'soft_delete_runs']

    def mark_failed(self, request, queryset):
        """Fail runs left pending or running, e.g. after an interrupted command."""
        count = 0
        for run in queryset.filter(status__in=['pending', 'running']):
            try:
                run.fail('Marked failed from admin', user=request.user)
                count += 1
            except ValueError:
                pass

        self.message_user(
            request,
            f'Marked {count} run(s) as failed.'
        )
    mark_failed.short_description = 'Mark selected runs as failed'

    def soft_delete_runs(self, request, queryset):
        count = queryset.soft_delete(user=request.user)

        self.message_user(
            request,
            f'Deleted {count} run(s).'
        )
    soft_delete_runs.short_description = 'Delete selected runs'

    def has_add_permission(self, request):
        return False

    def has_delete_permission(self, request, obj=None):
        """Runs are soft deleted through the API or the bulk action."""
        return False
