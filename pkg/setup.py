from setuptools import setup


with open("README.md", encoding="utf-8") as f:
    long_description = f.read()


setup(
    name="synpy",
    version="0.1.0",
    description="Синтаксис со связыванием по 2-сигнатуре: подстановка, редукции, модели",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="Vladcom4iiik",
    license="GPLv3",
    keywords=[
        "syntax",
        "binding",
        "de bruijn",
        "substitution",
        "lambda calculus",
        "beta reduction",
        "rewriting",
        "relative monad",
        "initial algebra",
        "signature",
    ],
    packages=["synpy"],
    package_data={"synpy": ["py.typed", "data/*.json"]},
    entry_points={"console_scripts": ["syn = synpy.cli:main"]},
    classifiers=[
        "Natural Language :: Russian",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
    ],
    install_requires=[],
    python_requires=">=3.10",
)
