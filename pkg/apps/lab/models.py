"""
Recorded experiment runs.
"""

from django.core.exceptions import ValidationError
from django.db import models
from django.utils import timezone

from apps.common.models import BaseModel


class ExperimentRun(BaseModel):
    """
    One execution of a lab experiment with its parameters, summary and rows.

    Status moves pending -> running -> completed | failed.
    """

    KIND_CHOICES = [
        ('sum', 'Floor sum'),
        ('decompose', 'Decomposition'),
        ('cf', 'C_f enclosure'),
        ('pade', 'Polynomial pair'),
        ('spacing', 'Spacing'),
        ('exppair', 'Exponent pair'),
        ('sweep', 'Sweep'),
        ('fit', 'Exponent fit'),
        ('psi', 'Psi sum'),
    ]

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('completed', 'Completed'),
        ('failed', 'Failed'),
    ]

    kind = models.CharField(
        max_length=20,
        choices=KIND_CHOICES,
        help_text="Experiment that was run"
    )

    status = models.CharField(
        max_length=20,
        choices=STATUS_CHOICES,
        default='pending',
        help_text="Current status of the run"
    )

    parameters = models.JSONField(
        default=dict,
        blank=True,
        help_text="Validated experiment parameters, rationals as p/q strings"
    )

    summary = models.JSONField(
        default=dict,
        blank=True,
        help_text="Headline results of the run"
    )

    results = models.JSONField(
        default=dict,
        blank=True,
        help_text="CSV header and rows with exact p/q values"
    )

    row_count = models.PositiveIntegerField(
        default=0,
        help_text="Number of result rows"
    )

    started_at = models.DateTimeField(
        blank=True,
        null=True,
        help_text="When the run started"
    )

    finished_at = models.DateTimeField(
        blank=True,
        null=True,
        help_text="When the run completed or failed"
    )

    error_message = models.TextField(
        blank=True,
        null=True,
        help_text="Diagnostic of a failed run"
    )

    class Meta:
        db_table = 'experiment_runs'
        verbose_name = 'Experiment Run'
        verbose_name_plural = 'Experiment Runs'
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['kind'], name='experiment_kind_idx'),
            models.Index(fields=['status'], name='experiment_status_idx'),
        ]

    def __str__(self):
        return f"{self.kind} run {str(self.id)[:8]} - {self.status}"

    def clean(self):
        super().clean()
        for name in ('parameters', 'summary', 'results'):
            value = getattr(self, name)
            if value and not isinstance(value, dict):
                raise ValidationError({name: f"{name.capitalize()} must be a valid JSON object."})

    def save(self, *args, **kwargs):
        self.full_clean()
        super().save(*args, **kwargs)

    @property
    def duration_seconds(self):
        if self.started_at and self.finished_at:
            return (self.finished_at - self.started_at).total_seconds()
        return None

    def start(self, user=None):
        """Mark the run as running."""
        if self.status != 'pending':
            raise ValueError(f"Cannot start run with status: {self.status}")
        self.status = 'running'
        self.started_at = timezone.now()
        self.stamp(user)
        self.save()

    def complete(self, summary=None, header=None, rows=None, user=None):
        """Store the results of a running run."""
        if self.status != 'running':
            raise ValueError(f"Cannot complete run with status: {self.status}")
        if summary is not None and not isinstance(summary, dict):
            raise ValueError("Summary must be a dictionary")
        rows = list(rows or [])
        self.status = 'completed'
        self.finished_at = timezone.now()
        self.summary = summary or {}
        self.results = {'header': list(header or []), 'rows': rows}
        self.row_count = len(rows)
        self.stamp(user)
        self.save()

    def fail(self, error, user=None):
        """Record the diagnostic of a pending or running run."""
        if self.status not in ('pending', 'running'):
            raise ValueError(f"Cannot fail run with status: {self.status}")
        self.status = 'failed'
        self.finished_at = timezone.now()
        self.error_message = str(error)
        self.stamp(user)
        self.save()
