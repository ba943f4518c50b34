﻿"""Validation utilities for module 2."""
