from setuptools import setup, find_packages

setup(
    name='infoflow',
    version='1.0.0',
    url='',
    author='Author Name',
    author_email='author@gmail.com',
    description='Classifications, sequent theories, information flow and semantic integration of ontologies',
    packages=find_packages(exclude=['tests', 'tests.*']),
    install_requires=['pyyaml', 'jinja2', 'networkx', 'graphviz'],
    extras_require={
        'progress': ['tqdm'],
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['ifk=infoflow.cli:main'],
    },
)
