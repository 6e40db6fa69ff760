class jjava_lang_Object{
    public:operator jobject();
    public:jjava_lang_Object(jobject);
};
class Jjava_lang_Object{
    public:operator jjava_lang_Object();
    public:Jjava_lang_Object(jjava_lang_Object);
};

class jjava_io_DataOutput:public jjava_lang_Object{
    public:jjava_io_DataOutput(jobject);
    public:Jjava_io_DataOutput operator++(int);
};
class Jjava_io_DataOutput:public virtual Jjava_lang_Object{
    public:operator jjava_io_DataOutput()const;
    public:Jjava_io_DataOutput(jjava_io_DataOutput);
};

class jjava_io_ObjectOutput:public jjava_lang_Object{
    public:operator jjava_io_DataOutput()const;
    public:jjava_io_ObjectOutput(jobject);
    public:Jjava_io_ObjectOutput operator++(int);
};
class Jjava_io_ObjectOutput:public virtual Jjava_io_DataOutput,
    public virtual Jjava_lang_Object{
    public:operator jjava_io_ObjectOutput()const;
    public:Jjava_io_ObjectOutput(jjava_io_ObjectOutput);
};
