"""
Abstract base model for recorded lab objects.

Rows are never removed from the database: deleting a run clears ``is_active``
and the default manager hides it. ``all_objects`` still sees everything.
"""

import uuid

from django.db import models
from django.utils import timezone


class ActiveQuerySet(models.QuerySet):

    def active(self):
        return self.filter(is_active=True)

    def soft_delete(self, user=None):
        """Deactivate every row in the queryset with one UPDATE."""
        changes = {'is_active': False, 'updated_at': timezone.now()}
        if user:
            changes['updated_by'] = str(user)
        return self.update(**changes)


class ActiveManager(models.Manager.from_queryset(ActiveQuerySet)):
    """Default manager: active records only."""

    def get_queryset(self):
        return super().get_queryset().active()


class BaseModel(models.Model):
    """UUID key, timestamps, soft delete and the username that last touched the row."""

    id = models.UUIDField(
        primary_key=True,
        default=uuid.uuid4,
        editable=False,
        help_text="Record identifier"
    )
    created_at = models.DateTimeField(auto_now_add=True, help_text="When the record was created")
    updated_at = models.DateTimeField(auto_now=True, help_text="When the record last changed")
    is_active = models.BooleanField(default=True, help_text="False once the record is deleted")
    created_by = models.CharField(
        max_length=100, blank=True, null=True,
        help_text="Username, or 'cli' for runs recorded by a command"
    )
    updated_by = models.CharField(
        max_length=100, blank=True, null=True,
        help_text="Username behind the last change"
    )

    objects = ActiveManager()
    all_objects = models.Manager.from_queryset(ActiveQuerySet)()

    class Meta:
        abstract = True
        ordering = ['-created_at']

    def stamp(self, user=None):
        """Record who made the pending change; no-op without a user."""
        if user:
            self.updated_by = str(user)

    def soft_delete(self, user=None):
        self.is_active = False
        self.stamp(user)
        self.save(update_fields=['is_active', 'updated_by', 'updated_at'])

    def save(self, *args, **kwargs):
        # auto_now only fires for fields listed in update_fields
        update_fields = kwargs.get('update_fields')
        if update_fields is not None and 'updated_at' not in update_fields:
            kwargs['update_fields'] = [*update_fields, 'updated_at']
        super().save(*args, **kwargs)

    def __str__(self):
        return f"{self.__class__.__name__} {str(self.id)[:8]}"
