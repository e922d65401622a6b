# This file can be left empty.
