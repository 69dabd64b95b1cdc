#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
PyLYZEC - Python Lee-Yang Zeros and Echo Correlators
Lee-Yang zeros and probe spin correlators of the bath in a model file
"""
import sys

from pylyzec.cli import main


if __name__ == '__main__':
    sys.exit(main())
