# Generated by Django 4.2.7 on 2026-10-18 09:12

from django.db import migrations, models
import uuid


class Migration(migrations.Migration):
    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ExperimentRun",
            fields=[
                (
                    "id",
                    models.UUIDField(
                        default=uuid.uuid4,
                        editable=False,
                        help_text="Record identifier",
                        primary_key=True,
                        serialize=False,
                    ),
                ),
                (
                    "created_at",
                    models.DateTimeField(
                        auto_now_add=True,
                        help_text="When the record was created",
                    ),
                ),
                (
                    "updated_at",
                    models.DateTimeField(
                        auto_now=True,
                        help_text="When the record last changed",
                    ),
                ),
                (
                    "is_active",
                    models.BooleanField(
                        default=True,
                        help_text="False once the record is deleted",
                    ),
                ),
                (
                    "created_by",
                    models.CharField(
                        blank=True,
                        help_text="Username, or 'cli' for runs recorded by a command",
                        max_length=100,
                        null=True,
                    ),
                ),
                (
                    "updated_by",
                    models.CharField(
                        blank=True,
                        help_text="Username behind the last change",
                        max_length=100,
                        null=True,
                    ),
                ),
                (
                    "kind",
                    models.CharField(
                        choices=[
                            ("sum", "Floor sum"),
                            ("decompose", "Decomposition"),
                            ("cf", "C_f enclosure"),
                            ("pade", "Polynomial pair"),
                            ("spacing", "Spacing"),
                            ("exppair", "Exponent pair"),
                            ("sweep", "Sweep"),
                            ("fit", "Exponent fit"),
                            ("psi", "Psi sum"),
                        ],
                        help_text="Experiment that was run",
                        max_length=20,
                    ),
                ),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("pending", "Pending"),
                            ("running", "Running"),
                            ("completed", "Completed"),
                            ("failed", "Failed"),
                        ],
                        default="pending",
                        help_text="Current status of the run",
                        max_length=20,
                    ),
                ),
                (
                    "parameters",
                    models.JSONField(
                        blank=True,
                        default=dict,
                        help_text="Validated experiment parameters, rationals as p/q strings",
                    ),
                ),
                (
                    "summary",
                    models.JSONField(
                        blank=True,
                        default=dict,
                        help_text="Headline results of the run",
                    ),
                ),
                (
                    "results",
                    models.JSONField(
                        blank=True,
                        default=dict,
                        help_text="CSV header and rows with exact p/q values",
                    ),
                ),
                (
                    "row_count",
                    models.PositiveIntegerField(
                        default=0, help_text="Number of result rows"
                    ),
                ),
                (
                    "started_at",
                    models.DateTimeField(
                        blank=True, help_text="When the run started", null=True
                    ),
                ),
                (
                    "finished_at",
                    models.DateTimeField(
                        blank=True,
                        help_text="When the run completed or failed",
                        null=True,
                    ),
                ),
                (
                    "error_message",
                    models.TextField(
                        blank=True, help_text="Diagnostic of a failed run", null=True
                    ),
                ),
            ],
            options={
                "verbose_name": "Experiment Run",
                "verbose_name_plural": "Experiment Runs",
                "db_table": "experiment_runs",
                "ordering": ["-created_at"],
                "indexes": [
                    models.Index(fields=["kind"], name="experiment_kind_idx"),
                    models.Index(fields=["status"], name="experiment_status_idx"),
                ],
            },
        ),
    ]
