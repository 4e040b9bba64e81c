import os

from gemkit.kirby.diagram import parse_kirby


DIAGRAMS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))),
                            'diagrams')


def diagram_path(name):
    return os.path.join(DIAGRAMS_DIR, f'{name}.kd')


def load_diagram(name):
    with open(diagram_path(name)) as f:
        return parse_kirby(f.read())
