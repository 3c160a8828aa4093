import json
from typing import Any, Dict

from django.db import models


class Job(models.Model):
    """One recorded CLI run: the subcommand, its parameters and its report."""
    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('success', 'Success'),
        ('failed', 'Failed'),
    ]

    JOB_TYPE_CHOICES = [
        ('verify-hopf', 'Verify Hopf axioms'),
        ('double', 'Drinfeld double'),
        ('bimodule', 'Bicovariant bimodule'),
        ('calculi', 'First-order calculi'),
        ('cohomology', 'Hochschild cohomology'),
        ('group', 'Finite group'),
        ('eq2', 'E_q(2) relations'),
    ]

    job_type = models.CharField(
        max_length=32,
        choices=JOB_TYPE_CHOICES,
        help_text="Subcommand that produced the run"
    )
    parameters = models.TextField(
        default='{}',
        help_text="JSON object of the subcommand's arguments"
    )
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='pending')
    report = models.TextField(blank=True, null=True, help_text="JSON report of the run")
    log = models.TextField(blank=True, null=True)
    started_at = models.DateTimeField(null=True, blank=True)
    finished_at = models.DateTimeField(null=True, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.job_type} ({self.status})"

    def get_parameters(self) -> Dict[str, Any]:
        return json.loads(self.parameters or '{}')

    def get_report(self) -> Dict[str, Any]:
        return json.loads(self.report) if self.report else {}
